"""Domain types and basis conventions for the two-spin Ising gate simulator.

The computational basis is ordered (|00>, |01>, |10>, |11>), first digit =
control spin, second digit = target spin.  Every matrix, state vector and
CSV column in this package uses that order.  All frequencies and amplitudes
are dimensionless angular frequencies (hbar = 1); times are their inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "BASIS_LABELS",
    "BASIS_INDEX",
    "NORM_TOL",
    "GateMatrix",
    "SystemParams",
    "PulseSpec",
    "QState",
    "GcnPhases",
    "TimeSeries",
    "digital_state",
    "superposition_state",
    "wrap_angle",
    "ResonanceError",
    "GcnPatternError",
    "CalibrationError",
]

BASIS_LABELS = ("00", "01", "10", "11")
BASIS_INDEX = {label: i for i, label in enumerate(BASIS_LABELS)}

#: default tolerance on | ||amps||^2 - 1 | for states accepted as physical
NORM_TOL = 1e-9

#: 4x4 complex ndarray in the fixed basis order
GateMatrix = np.ndarray


class ResonanceError(ValueError):
    """Raised when a pulse carrier is off the conditional resonance."""


class CalibrationError(RuntimeError):
    """Raised when a calibration search cannot locate an interior optimum."""


class GcnPatternError(ValueError):
    """A gate matrix does not fit the phased controlled-NOT sparsity pattern.

    Attributes
    ----------
    max_leak : float
        Largest modulus found outside the pattern (or the deficit of a
        patterned entry, whichever triggered the rejection).
    indices : tuple[int, int]
        Matrix indices of the offending entry.
    """

    def __init__(self, message: str, max_leak: float, indices: tuple[int, int]):
        super().__init__(message)
        self.max_leak = max_leak
        self.indices = indices


def wrap_angle(phi: float) -> float:
    """Reduce an angle to the interval (-pi, pi]."""
    wrapped = (phi + np.pi) % (2.0 * np.pi) - np.pi
    if wrapped <= -np.pi:
        wrapped = np.pi
    return float(wrapped)


@dataclass(frozen=True)
class SystemParams:
    """Static spin system: resonance frequencies and Ising coupling.

    The four levels sit at the transition frequencies omega_n +/- J.  The
    target-spin transition conditional on the control being |1> is at
    omega2 - J; gate scenarios therefore require a nonzero coupling, or the
    conditional line is not spectrally distinct.
    """

    omega1: float
    omega2: float
    coupling_j: float

    def __post_init__(self):
        if not (np.isfinite(self.omega1) and self.omega1 > 0):
            raise ValueError(f"omega1 must be positive and finite, got {self.omega1}")
        if not (np.isfinite(self.omega2) and self.omega2 > 0):
            raise ValueError(f"omega2 must be positive and finite, got {self.omega2}")
        if not np.isfinite(self.coupling_j):
            raise ValueError(f"coupling_j must be finite, got {self.coupling_j}")

    @property
    def resonant_carrier(self) -> float:
        """Frequency of the conditional target transition, omega2 - J."""
        return self.omega2 - self.coupling_j


@dataclass(frozen=True)
class PulseSpec:
    """One rectangular, circularly polarized transverse pulse.

    The field is on at full amplitude for t in [0, duration] and absent
    outside; no rise or fall shaping is supported.
    """

    carrier: float
    a1: float
    a2: float
    duration: float

    def __post_init__(self):
        if not (np.isfinite(self.carrier) and self.carrier > 0):
            raise ValueError(f"carrier must be positive and finite, got {self.carrier}")
        if not (np.isfinite(self.a1) and self.a1 >= 0):
            raise ValueError(f"a1 must be >= 0, got {self.a1}")
        if not (np.isfinite(self.a2) and self.a2 >= 0):
            raise ValueError(f"a2 must be >= 0, got {self.a2}")
        if not (np.isfinite(self.duration) and self.duration >= 0):
            raise ValueError(f"duration must be >= 0, got {self.duration}")


@dataclass(frozen=True)
class QState:
    """Four complex amplitudes over the (00, 01, 10, 11) basis.

    Instances are immutable; the amplitude array is copied in and marked
    read-only.  Construction validates normalization to `norm_tol`.
    """

    amps: np.ndarray
    norm_tol: float = field(default=NORM_TOL, compare=False)

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        if amps.shape != (4,):
            raise ValueError(f"need exactly 4 amplitudes, got shape {np.shape(self.amps)}")
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > self.norm_tol:
            raise ValueError(
                f"state norm^2 = {norm2!r} deviates from 1 by more than {self.norm_tol}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def c00(self) -> complex:
        return complex(self.amps[0])

    @property
    def c01(self) -> complex:
        return complex(self.amps[1])

    @property
    def c10(self) -> complex:
        return complex(self.amps[2])

    @property
    def c11(self) -> complex:
        return complex(self.amps[3])

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


def digital_state(label: str) -> QState:
    """Unit basis state |label> with amplitude 1 at the label's index.

    Raises
    ------
    ValueError
        If `label` is not one of '00', '01', '10', '11'.
    """
    if label not in BASIS_INDEX:
        raise ValueError(
            f"invalid basis label {label!r}; valid labels are {', '.join(BASIS_LABELS)}"
        )
    amps = np.zeros(4, dtype=complex)
    amps[BASIS_INDEX[label]] = 1.0
    return QState(amps)


def superposition_state(amps: Sequence[complex], normalize: bool = False) -> QState:
    """Validated superposition over the four basis states.

    With `normalize=True` the amplitudes are rescaled by 1/||amps||; without
    it, vectors whose squared norm deviates from 1 by more than the default
    tolerance are rejected with the measured norm in the message.
    """
    arr = np.array(amps, dtype=complex).reshape(-1)
    if arr.shape != (4,):
        raise ValueError(f"need exactly 4 amplitudes, got shape {np.shape(amps)}")
    norm2 = float(np.sum(np.abs(arr) ** 2))
    if norm2 == 0.0:
        raise ValueError("zero vector is not a valid state")
    if normalize:
        arr = arr / np.sqrt(norm2)
    return QState(arr)


@dataclass(frozen=True)
class GcnPhases:
    """Per-basis-state phase shifts of a phased controlled-NOT, in radians.

    Note the index crossing in the gate itself: `dphi11` multiplies the
    |10><11| entry and `dphi10` the |11><10| entry (the phase is named after
    the amplitude it acts on, not the row it lands in).  Normalized
    instances produced by phase extraction have dphi00 == 0 exactly and all
    phases in (-pi, pi].
    """

    dphi00: float
    dphi01: float
    dphi10: float
    dphi11: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.dphi00, self.dphi01, self.dphi10, self.dphi11)


@dataclass(frozen=True)
class TimeSeries:
    """Sampled amplitude trajectory: times, amplitudes, squared norms.

    `frame` records whether the rows are rotating-frame amplitudes ('raw')
    or have the residual free-evolution phases stripped ('primed').
    """

    t: np.ndarray
    amps: np.ndarray
    norm: np.ndarray
    frame: str

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        amps = np.asarray(self.amps, dtype=complex)
        norm = np.asarray(self.norm, dtype=float)
        if self.frame not in ("raw", "primed"):
            raise ValueError(f"frame must be 'raw' or 'primed', got {self.frame!r}")
        if t.ndim != 1 or amps.shape != (t.size, 4) or norm.shape != (t.size,):
            raise ValueError("inconsistent row shapes")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "norm", norm)
        self.validate()

    def validate(self, norm_tol: float = 1e-12) -> None:
        """Check row ordering and that the norm column is self-consistent."""
        dt = np.diff(self.t)
        if np.any(dt <= 0):
            # a zero-length pulse is sampled as two identical rows at t = 0
            degenerate = (
                self.t.size == 2
                and self.t[0] == self.t[1]
                and np.array_equal(self.amps[0], self.amps[1])
            )
            if not degenerate:
                raise ValueError("times must be strictly increasing")
        recomputed = np.sum(np.abs(self.amps) ** 2, axis=1)
        worst = float(np.max(np.abs(recomputed - self.norm))) if self.t.size else 0.0
        if worst > norm_tol:
            raise ValueError(f"norm column inconsistent with amplitudes by {worst:.3e}")

    def __len__(self) -> int:
        return int(self.t.size)
