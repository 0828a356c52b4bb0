"""Classify two-qubit gates by how per-qubit Z rotations move through them.

A gate "carries" phases when ``U (Z_t0 x Z_t1) == (Z_p0 x Z_p1) U`` has a
solution for every ``(t0, t1)``; this holds exactly when the element-wise
absolute value of ``U`` is a permutation matrix whose permutation commutes
with the joint bit flip.  Excitation-number-conserving (ENC) gates satisfy
the weaker equal-angle version.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import permutations

import numpy as np

from .su2 import WeylCoords, as_unitary, weyl_coordinates, z_rot

# Entries below ENTRY_ZERO_TOL count as structural zeros; permutation pivots
# must exceed 1 - PERMUTATION_TOL in magnitude.
ENTRY_ZERO_TOL = 1e-10
PERMUTATION_TOL = 1e-8


class NotCarrierError(ValueError):
    """Raised when a carry map is requested for a non-carrier gate."""


def _bit_signs(index: int) -> tuple[int, int]:
    # (-1)**bit for the two bits of a basis index.
    return (1 if index < 2 else -1, 1 if index % 2 == 0 else -1)


@dataclass(frozen=True)
class CarrierPermutation:
    """Row -> column map of the nonzero entries, with its sign pairs.

    ``signs[row]`` holds ``((-1)**b0, (-1)**b1)`` for the column bits; these
    are the coefficients of the carried-angle equations.
    """

    mapping: tuple[int, int, int, int]
    signs: tuple[tuple[int, int], ...]

    @classmethod
    def from_mapping(cls, mapping: tuple[int, int, int, int]) -> "CarrierPermutation":
        return cls(mapping, tuple(_bit_signs(col) for col in mapping))


@dataclass(frozen=True)
class CarryMap:
    """Integer-coefficient linear map ``(t0, t1) -> (p0, p1)``."""

    matrix: tuple[tuple[int, int], tuple[int, int]]

    def __call__(self, theta0: float, theta1: float) -> tuple[float, float]:
        (a, b), (c, d) = self.matrix
        return (a * theta0 + b * theta1, c * theta0 + d * theta1)


class Segment(Enum):
    I_CNOT = "I-CNOT"
    ISWAP_SWAP = "iSWAP-SWAP"
    OFF_SEGMENT = "off-segment"


def _is_equivariant(mapping) -> bool:
    # Joint bit flip is index -> 3 - index.
    return all(mapping[3 - j] == 3 - mapping[j] for j in range(4))


def equivariant_permutations() -> tuple[tuple[int, int, int, int], ...]:
    """The eight bit-flip-equivariant permutations of the two-qubit basis."""
    return tuple(
        p for p in permutations(range(4)) if _is_equivariant(p)
    )


def abs_permutation(u, tol: float = PERMUTATION_TOL) -> CarrierPermutation | None:
    """Permutation structure of ``|u|`` if it is one (and equivariant)."""
    u = as_unitary(u, 4)
    mag = np.abs(u)
    mapping = []
    for row in range(4):
        col = int(np.argmax(mag[row]))
        if mag[row, col] < 1.0 - tol:
            return None
        mapping.append(col)
    if sorted(mapping) != [0, 1, 2, 3]:
        return None
    mapping = tuple(mapping)
    if not _is_equivariant(mapping):
        return None
    return CarrierPermutation.from_mapping(mapping)


def is_phase_carrier(u) -> bool:
    """True iff per-qubit Z rotations commute through ``u`` with relabeled angles."""
    return abs_permutation(u) is not None


def carry_map(u) -> CarryMap:
    """Angle relabeling of a carrier: ``u @ (Z_t0 x Z_t1) == (Z_p0 x Z_p1) @ u``.

    Exact, with no leftover global phase; the equations come from the rows
    indexed ``00`` and ``01``:
    ``p0 + p1 = s(00)_0 t0 + s(00)_1 t1`` and
    ``p0 - p1 = s(01)_0 t0 + s(01)_1 t1``.
    """
    perm = abs_permutation(u)
    if perm is None:
        raise NotCarrierError("gate is not a phase carrier")
    e0, e1 = perm.signs[0], perm.signs[1]
    matrix = (
        ((e0[0] + e1[0]) // 2, (e0[1] + e1[1]) // 2),
        ((e0[0] - e1[0]) // 2, (e0[1] - e1[1]) // 2),
    )
    return CarryMap(matrix)


_ENC_MASK = np.array(
    [
        [True, False, False, False],
        [False, True, True, False],
        [False, True, True, False],
        [False, False, False, True],
    ]
)


def is_enc(u, tol: float = ENTRY_ZERO_TOL) -> bool:
    """True iff ``u`` preserves the 1+2+1 excitation-number block structure."""
    u = as_unitary(u, 4)
    return bool(np.max(np.abs(u[~_ENC_MASK])) <= tol)


def is_generalized_enc(u, tol: float = ENTRY_ZERO_TOL) -> tuple[bool, tuple[int, int] | None]:
    """Detect ``u (Z_t x Z_t) == (Z_{p*t} x Z_{q*t}) u`` with integer p, q.

    Comparing spectra of the generators forces ``(p, q)`` into
    ``{(1,1), (-1,-1), (1,-1), (-1,1)}``; each candidate is checked at two
    incommensurate probe angles and then at 20 random angles.
    """
    u = as_unitary(u, 4)
    rng = np.random.default_rng(20)
    angles = [0.3, 1.1] + list(rng.uniform(-math.pi, math.pi, size=20))
    for p, q in ((1, 1), (-1, -1), (1, -1), (-1, 1)):
        ok = True
        for t in angles:
            lhs = u @ np.kron(z_rot(t), z_rot(t))
            rhs = np.kron(z_rot(p * t), z_rot(q * t)) @ u
            if float(np.max(np.abs(lhs - rhs))) > tol:
                ok = False
                break
        if ok:
            return True, (p, q)
    return False, None


def segment_of(w: WeylCoords, tol: float = 1e-8) -> Segment:
    """Which carrier line segment (if any) the coordinates lie on."""
    if abs(w.c2) <= tol and abs(w.c3) <= tol:
        return Segment.I_CNOT
    if abs(w.c1 - math.pi / 2) <= tol and abs(w.c2 - math.pi / 2) <= tol:
        return Segment.ISWAP_SWAP
    return Segment.OFF_SEGMENT


@dataclass(frozen=True, eq=False)
class ClassifierResult:
    is_carrier: bool
    permutation: CarrierPermutation | None
    carry: CarryMap | None
    is_enc: bool
    is_generalized_enc: bool
    enc_map: tuple[int, int] | None
    weyl: WeylCoords
    segment: Segment


def classify(u) -> ClassifierResult:
    """Full classification of a two-qubit unitary."""
    u = as_unitary(u, 4)
    perm = abs_permutation(u)
    cmap = carry_map(u) if perm is not None else None
    enc = is_enc(u)
    gen, enc_map = is_generalized_enc(u)
    coords = weyl_coordinates(u)
    return ClassifierResult(
        is_carrier=perm is not None,
        permutation=perm,
        carry=cmap,
        is_enc=enc,
        is_generalized_enc=gen,
        enc_map=enc_map,
        weyl=coords,
        segment=segment_of(coords),
    )


def carry_defect(u, cmap: CarryMap, theta0: float, theta1: float) -> float:
    """Max-norm residual of the carry identity at one angle pair (no phase slack)."""
    u = np.asarray(u, dtype=complex)
    p0, p1 = cmap(theta0, theta1)
    lhs = u @ np.kron(z_rot(theta0), z_rot(theta1))
    rhs = np.kron(z_rot(p0), z_rot(p1)) @ u
    return float(np.max(np.abs(lhs - rhs)))
