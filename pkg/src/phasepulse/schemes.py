"""Single-qubit compilation schemes over phase-shifted fixed-angle X pulses.

Every scheme emits a time-ordered :class:`PulseSequence` (index 0 acts
first) whose product reproduces the target gate up to a global phase.  The
virtual-Z scheme additionally leaves a pending Z rotation *after* the
pulses: ``pulse product == z_rot(residual_z) @ target`` up to phase.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .su2 import (
    GateParams,
    as_unitary,
    conjugated_x,
    normalize_angle,
    normalize_rotation,
    phase_distance,
    x_rot,
    y_rot,
    z_rot,
)

PI = math.pi
_INV_SQRT2 = 1.0 / math.sqrt(2.0)
_INV_SQRT3 = 1.0 / math.sqrt(3.0)

# Detection thresholds for the special-case dispatcher.
STRUCTURE_TOL = 1e-10
CLIFFORD_TOL = 1e-8


@dataclass(frozen=True)
class Pulse:
    """One conjugated X rotation: area ``sigma``, drive phase shift ``phase``."""

    sigma: float
    phase: float

    def __post_init__(self):
        object.__setattr__(self, "sigma", normalize_rotation(self.sigma))
        object.__setattr__(self, "phase", normalize_angle(self.phase))

    def unitary(self) -> np.ndarray:
        return conjugated_x(self.sigma, self.phase)


@dataclass(frozen=True)
class PulseSequence:
    """Time-ordered pulses; index 0 acts first."""

    pulses: tuple[Pulse, ...]

    @classmethod
    def of(cls, *pairs: tuple[float, float]) -> "PulseSequence":
        return cls(tuple(Pulse(s, p) for s, p in pairs))

    def unitary(self) -> np.ndarray:
        u = np.eye(2, dtype=complex)
        for pulse in self.pulses:
            u = pulse.unitary() @ u
        return u

    def __len__(self) -> int:
        return len(self.pulses)

    def __iter__(self):
        return iter(self.pulses)

    def __getitem__(self, idx):
        return self.pulses[idx]


class Scheme(Enum):
    VZ = "vz"
    THREE = "three"
    FOUR = "four"
    TWO = "two"
    SPECIAL = "special"


@dataclass(frozen=True)
class CompiledGate:
    """Pulses plus the pending Z frame they leave behind.

    Contract: ``sequence product == z_rot(residual_z) @ target`` up to a
    global phase; ``residual_z`` is 0 for every scheme except VZ.
    """

    sequence: PulseSequence
    residual_z: float
    scheme: Scheme
    elided: int = 0

    def physical_unitary(self) -> np.ndarray:
        return self.sequence.unitary()


def three_pulse(p: GateParams) -> CompiledGate:
    """Exact compilation as conjugated X90, X180, X90 pulses.

    Phases solve ``theta = alpha - beta``, ``omega = -alpha - beta``,
    ``phi = -beta + gamma - pi``; the X180 sits between the two X90s and
    the omega pulse acts first.
    """
    theta = p.alpha - p.beta
    omega = -p.alpha - p.beta
    phi = -p.beta + p.gamma - PI
    seq = PulseSequence.of((PI / 2, omega), (PI, phi), (PI / 2, theta))
    return CompiledGate(seq, 0.0, Scheme.THREE)


def virtual_z(p: GateParams) -> CompiledGate:
    """Two X90 pulses plus a pending frame ``residual_z = -(theta+phi+omega)``.

    Euler bridge: ``theta = -alpha + beta``, ``phi = pi - 2*gamma``,
    ``omega = -alpha - beta - pi``; the pulse phases are ``omega`` then
    ``omega + phi`` and the leftover ``z_rot(residual_z)`` is the left
    factor of the physical product.
    """
    theta = -p.alpha + p.beta
    phi = PI - 2.0 * p.gamma
    omega = -p.alpha - p.beta - PI
    residual = normalize_angle(-(theta + phi + omega))
    seq = PulseSequence.of((PI / 2, omega), (PI / 2, omega + phi))
    return CompiledGate(seq, residual, Scheme.VZ)


def four_pulse(p: GateParams) -> CompiledGate:
    """Like :func:`three_pulse` with the X180 split into two equal X90s."""
    theta = p.alpha - p.beta
    omega = -p.alpha - p.beta
    phi = -p.beta + p.gamma - PI
    seq = PulseSequence.of((PI / 2, omega), (PI / 2, phi), (PI / 2, phi), (PI / 2, theta))
    return CompiledGate(seq, 0.0, Scheme.FOUR)


def two_pulse(p: GateParams) -> CompiledGate:
    """One X180 followed by one variable-angle pulse of area ``2*gamma - pi``.

    At ``gamma == pi/2`` the variable pulse has zero area and is elided.
    """
    sigma = normalize_rotation(2.0 * p.gamma - PI)
    theta = 1.5 * PI + p.alpha - p.beta
    omega = 1.5 * PI - p.beta
    if abs(sigma) < 1e-12:
        seq = PulseSequence.of((PI, omega))
        return CompiledGate(seq, 0.0, Scheme.TWO, elided=1)
    seq = PulseSequence.of((PI, omega), (sigma, theta))
    return CompiledGate(seq, 0.0, Scheme.TWO)


def _su2_form(u: np.ndarray) -> np.ndarray:
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    return u * cmath.exp(-0.5j * cmath.phase(det))


def _anti_diagonal_pulse(su: np.ndarray) -> Pulse:
    # [[0, -exp(-i b)], [exp(i b), 0]] == conjugated_x(pi, 3*pi/2 - b)
    beta = cmath.phase(complex(su[1, 0]))
    return Pulse(PI, 1.5 * PI - beta)


def _diagonal_pulses(su: np.ndarray) -> tuple[Pulse, Pulse]:
    # diag(exp(i a), exp(-i a)) from two X180s of opposite phase shifts.
    alpha = cmath.phase(complex(su[0, 0]))
    theta = -0.5 * (alpha + PI)
    return (Pulse(PI, theta), Pulse(PI, -theta))


def _half_quarter_pulses(su: np.ndarray) -> tuple[Pulse, Pulse]:
    # conjX(pi/2, th) @ conjX(pi, ph) hits any det-1 gate with |u00| = 1/sqrt2:
    # exp(i ph) = i*sqrt2*u01 and exp(i (th-ph)) = -sqrt2*u00.
    ph = cmath.phase(1j * math.sqrt(2.0) * complex(su[0, 1]))
    th = ph + cmath.phase(-math.sqrt(2.0) * complex(su[0, 0]))
    return (Pulse(PI, ph), Pulse(PI / 2, th))


class CliffordCategory(Enum):
    PAULI_ROT = "pauli-rotation"
    HADAMARD_COUSIN = "hadamard-cousin"
    Y_ANALOG = "y-analog"


@dataclass(frozen=True, eq=False)
class CliffordEntry:
    index: int
    name: str
    category: CliffordCategory
    axis: tuple[float, float, float] | None
    matrix: np.ndarray
    sequence: PulseSequence


_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_Y = np.array([[0.0, -1j], [1j, 0.0]])
_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def _axis_rotation(axis: tuple[float, float, float], angle: float) -> np.ndarray:
    nx, ny, nz = axis
    h = nx * _X + ny * _Y + nz * _Z
    return math.cos(0.5 * angle) * np.eye(2) - 1j * math.sin(0.5 * angle) * h


def _axis_label(axis: tuple[float, float, float]) -> str:
    parts = []
    for value, label in zip(axis, "xyz"):
        if abs(value) > 1e-12:
            parts.append(("+" if value > 0 else "-") + label)
    return "".join(parts)


@lru_cache(maxsize=1)
def clifford_table() -> tuple[CliffordEntry, ...]:
    """All 24 single-qubit Cliffords (mod phase) with <=2-pulse sequences.

    38 pulses in total across the table (average 19/12 per gate).
    """
    entries: list[tuple[str, CliffordCategory, tuple | None, np.ndarray, PulseSequence]] = []

    def seq(*pairs):
        return PulseSequence.of(*pairs)

    x, y, z = (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)
    entries.append(("I", CliffordCategory.PAULI_ROT, None, np.eye(2, dtype=complex), seq()))
    entries.append(("X180", CliffordCategory.PAULI_ROT, x, x_rot(PI), seq((PI, 0.0))))
    entries.append(("X90", CliffordCategory.PAULI_ROT, x, x_rot(PI / 2), seq((PI / 2, 0.0))))
    entries.append(("X-90", CliffordCategory.PAULI_ROT, x, x_rot(-PI / 2), seq((PI / 2, PI))))
    entries.append(("Y180", CliffordCategory.PAULI_ROT, y, y_rot(PI), seq((PI, -PI / 2))))
    entries.append(("Y90", CliffordCategory.PAULI_ROT, y, y_rot(PI / 2), seq((PI / 2, -PI / 2))))
    entries.append(("Y-90", CliffordCategory.PAULI_ROT, y, y_rot(-PI / 2), seq((PI / 2, PI / 2))))
    entries.append(
        ("Z180", CliffordCategory.PAULI_ROT, z, z_rot(PI), seq((PI, -PI / 4), (PI, PI / 4)))
    )
    entries.append(
        ("Z90", CliffordCategory.PAULI_ROT, z, z_rot(PI / 2), seq((PI, -3 * PI / 8), (PI, 3 * PI / 8)))
    )
    entries.append(
        ("Z-90", CliffordCategory.PAULI_ROT, z, z_rot(-PI / 2), seq((PI, -5 * PI / 8), (PI, 5 * PI / 8)))
    )

    cousin_axes = [
        (_INV_SQRT2, _INV_SQRT2, 0.0),
        (_INV_SQRT2, -_INV_SQRT2, 0.0),
        (_INV_SQRT2, 0.0, _INV_SQRT2),
        (_INV_SQRT2, 0.0, -_INV_SQRT2),
        (0.0, _INV_SQRT2, _INV_SQRT2),
        (0.0, _INV_SQRT2, -_INV_SQRT2),
    ]
    for axis in cousin_axes:
        m = _axis_rotation(axis, PI)
        if abs(axis[2]) < 1e-12:
            sequence = PulseSequence((_anti_diagonal_pulse(m),))
        else:
            sequence = PulseSequence(_half_quarter_pulses(m))
        entries.append((f"pi@({_axis_label(axis)})", CliffordCategory.HADAMARD_COUSIN, axis, m, sequence))

    for sense in (1.0, -1.0):
        for sx, sy, sz in ((1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)):
            axis = (sx * _INV_SQRT3, sy * _INV_SQRT3, sz * _INV_SQRT3)
            angle = sense * 2.0 * PI / 3.0
            m = _axis_rotation(axis, angle)
            sequence = PulseSequence(_half_quarter_pulses(m))
            label = ("2pi/3@" if sense > 0 else "-2pi/3@") + f"({_axis_label(axis)})"
            entries.append((label, CliffordCategory.Y_ANALOG, axis, m, sequence))

    return tuple(
        CliffordEntry(i, name, cat, axis, matrix, sequence)
        for i, (name, cat, axis, matrix, sequence) in enumerate(entries)
    )


def special_case(u, tol: float = STRUCTURE_TOL) -> CompiledGate | None:
    """Compile ``u`` with fewer than three pulses when its shape allows it.

    Detection order: identity (0 pulses), anti-diagonal (one X180),
    diagonal (two X180s), Clifford table lookup (<=2 pulses).  Returns
    ``None`` for gates that need the full three-pulse scheme.
    """
    u = as_unitary(u, 2)
    if phase_distance(u, np.eye(2)) <= tol:
        return CompiledGate(PulseSequence(()), 0.0, Scheme.SPECIAL)
    su = _su2_form(u)
    diag_mag = max(abs(u[0, 0]), abs(u[1, 1]))
    off_mag = max(abs(u[0, 1]), abs(u[1, 0]))
    if diag_mag <= tol:
        return CompiledGate(PulseSequence((_anti_diagonal_pulse(su),)), 0.0, Scheme.SPECIAL)
    if off_mag <= tol:
        return CompiledGate(PulseSequence(_diagonal_pulses(su)), 0.0, Scheme.SPECIAL)
    for entry in clifford_table():
        if phase_distance(u, entry.matrix) <= CLIFFORD_TOL:
            return CompiledGate(entry.sequence, 0.0, Scheme.SPECIAL)
    return None


def absorb_z(gate: CompiledGate, delta_l: float, delta_r: float) -> CompiledGate:
    """Fold ``z_rot(delta_l) @ U @ z_rot(delta_r)`` into an existing compilation.

    Valid for three-pulse output (phase updates ``theta -> theta - dL``,
    ``phi -> phi + (dR-dL)/2``, ``omega -> omega + dR``) and for two-pulse
    output, both exact thanks to the X180 phase-reflection identity
    ``Z(-t) X180 Z(t) == Z(p-t) X180 Z(p+t)``.
    """
    delta_l, delta_r = float(delta_l), float(delta_r)
    if not (math.isfinite(delta_l) and math.isfinite(delta_r)):
        raise ValueError("deltas must be finite")
    if gate.scheme is Scheme.THREE:
        w, f, t = gate.sequence
        seq = PulseSequence.of(
            (w.sigma, w.phase + delta_r),
            (f.sigma, f.phase + 0.5 * (delta_r - delta_l)),
            (t.sigma, t.phase - delta_l),
        )
    elif gate.scheme is Scheme.TWO:
        pulses = list(gate.sequence)
        first = pulses[0]
        updated = [Pulse(first.sigma, first.phase + 0.5 * (delta_r - delta_l))]
        if len(pulses) == 2:
            second = pulses[1]
            updated.append(Pulse(second.sigma, second.phase - delta_l))
        seq = PulseSequence(tuple(updated))
    else:
        raise ValueError(f"absorb_z needs a THREE or TWO scheme gate, got {gate.scheme}")
    return CompiledGate(seq, gate.residual_z, gate.scheme, gate.elided)
