"""Fixed-size complex linear algebra for one- and two-qubit gates.

Conventions used across the package (all angles in radians):

* ``z_rot(theta) == diag(exp(-i*theta/2), exp(+i*theta/2))``
* ``x_rot(omega) == exp(-i*omega*X/2)``
* two-qubit basis order is ``|00>, |01>, |10>, |11>`` with qubit 0 as the
  most significant bit.

Matrices are plain complex128 numpy arrays; validation helpers are provided
instead of wrapper classes.  Phase-like angles are normalized to
``[-pi, pi)`` while rotation angles use ``(-pi, pi]`` so a pi-pulse keeps
the ``+pi`` label.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

PI = math.pi
TAU = 2.0 * math.pi

DEFAULT_TOL = 1e-9
UNITARY_TOL = 1e-8

__all__ = [
    "DEFAULT_TOL",
    "UNITARY_TOL",
    "GateParams",
    "Quaternion",
    "WeylCoords",
    "as_unitary",
    "conjugated_x",
    "equal_up_to_global_phase",
    "from_quaternion",
    "is_unitary",
    "normalize_angle",
    "normalize_rotation",
    "params_from_unitary",
    "phase_canonical",
    "phase_distance",
    "standard_gate",
    "to_quaternion",
    "unitarity_defect",
    "unitary_from_params",
    "weyl_coordinates",
    "x_rot",
    "y_rot",
    "z_rot",
]


def normalize_angle(x: float) -> float:
    """Reduce an angle to ``[-pi, pi)``."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"angle must be finite, got {x!r}")
    y = math.fmod(x + PI, TAU)
    if y < 0.0:
        y += TAU
    y -= PI
    if y >= PI:  # guard against rounding at the upper seam
        y -= TAU
    return y


def normalize_rotation(x: float) -> float:
    """Reduce a rotation angle to ``(-pi, pi]``, keeping pi-pulses at +pi."""
    y = normalize_angle(x)
    return PI if y == -PI else y


def _finite_matrix(m, dim: int | None = None) -> np.ndarray:
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if dim is not None and a.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix has non-finite entries")
    return a


def unitarity_defect(m) -> float:
    """Max-norm of ``m^dag m - I``."""
    a = _finite_matrix(m)
    return float(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0]))))


def is_unitary(m, tol: float = UNITARY_TOL) -> bool:
    try:
        return unitarity_defect(m) <= tol
    except ValueError:
        return False


def as_unitary(m, dim: int | None = None, tol: float = UNITARY_TOL) -> np.ndarray:
    """Validate and return ``m`` as a complex128 unitary array."""
    a = _finite_matrix(m, dim)
    defect = float(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0]))))
    if defect > tol:
        raise ValueError(f"matrix is not unitary (defect {defect:.3g} > {tol:.3g})")
    return a


def z_rot(theta: float) -> np.ndarray:
    """Z rotation ``diag(exp(-i*theta/2), exp(+i*theta/2))``."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta!r}")
    half = 0.5 * theta
    return np.array([[cmath.exp(-1j * half), 0.0], [0.0, cmath.exp(1j * half)]])


def x_rot(omega: float) -> np.ndarray:
    """X rotation ``exp(-i*omega*X/2)``."""
    omega = float(omega)
    if not math.isfinite(omega):
        raise ValueError(f"angle must be finite, got {omega!r}")
    c, s = math.cos(0.5 * omega), math.sin(0.5 * omega)
    return np.array([[c, -1j * s], [-1j * s, c]])


def y_rot(theta: float) -> np.ndarray:
    """Y rotation ``exp(-i*theta*Y/2)``."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta!r}")
    c, s = math.cos(0.5 * theta), math.sin(0.5 * theta)
    return np.array([[c, -s], [s, c]], dtype=complex)


def conjugated_x(sigma: float, phase: float) -> np.ndarray:
    """The unitary ``z_rot(-phase) @ x_rot(sigma) @ z_rot(phase)``.

    Physically: an X pulse of area ``sigma`` whose drive carries an extra
    phase shift ``phase``.
    """
    sigma, phase = float(sigma), float(phase)
    if not (math.isfinite(sigma) and math.isfinite(phase)):
        raise ValueError("angles must be finite")
    c, s = math.cos(0.5 * sigma), math.sin(0.5 * sigma)
    e = cmath.exp(1j * phase)
    return np.array([[c, -1j * s * e], [-1j * s * e.conjugate(), c]])


def phase_canonical(m) -> np.ndarray:
    """Divide by the phase of the largest-magnitude entry.

    Ties are broken by the lowest row-major index, which makes the result
    deterministic for exact inputs.
    """
    a = np.array(m, dtype=complex)
    k = int(np.argmax(np.abs(a).ravel()))
    pivot = a.ravel()[k]
    if pivot == 0:
        return a
    return a * (abs(pivot) / pivot)


def phase_distance(a, b) -> float:
    """Max-norm distance between ``a`` and the best phase-aligned ``b``.

    The aligning phase is the Frobenius-optimal ``c = <b,a>/|<b,a>|``,
    which realizes ``min_c ||a - c*b||`` without relying on entry-magnitude
    tie-breaking.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    ip = complex(np.vdot(b, a))
    c = ip / abs(ip) if abs(ip) > 1e-300 else 1.0
    return float(np.max(np.abs(a - c * b)))


def equal_up_to_global_phase(a, b, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``a == c*b`` for some unit phase ``c``, within ``tol``."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol!r}")
    return phase_distance(a, b) <= tol


@dataclass(frozen=True)
class GateParams:
    """Three real parameters of a det-1 single-qubit gate.

    The associated matrix is
    ``[[exp(i*alpha)*cos(gamma), -exp(-i*beta)*sin(gamma)],
       [exp(i*beta)*sin(gamma),  exp(-i*alpha)*cos(gamma)]]``
    with ``gamma`` in ``[0, pi/2]`` and ``alpha``, ``beta`` in ``[-pi, pi)``.
    """

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        a = normalize_angle(self.alpha)
        b = normalize_angle(self.beta)
        g = float(self.gamma)
        if not math.isfinite(g):
            raise ValueError(f"gamma must be finite, got {g!r}")
        if g < -1e-9 or g > PI / 2 + 1e-9:
            raise ValueError(f"gamma must lie in [0, pi/2], got {g!r}")
        g = min(max(g, 0.0), PI / 2)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "gamma", g)


def unitary_from_params(p: GateParams) -> np.ndarray:
    """Matrix of ``p`` (see :class:`GateParams`)."""
    cg, sg = math.cos(p.gamma), math.sin(p.gamma)
    ea, eb = cmath.exp(1j * p.alpha), cmath.exp(1j * p.beta)
    return np.array([[ea * cg, -sg / eb], [eb * sg, cg / ea]])


def params_from_unitary(u, tol: float = UNITARY_TOL) -> tuple[GateParams, float]:
    """Invert :func:`unitary_from_params` up to a global phase.

    Returns ``(params, phase)`` with ``u == exp(i*phase) * matrix(params)``.
    When ``gamma`` hits 0 or pi/2 the unconstrained angle is set to 0.
    """
    u = as_unitary(u, 2, tol)
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    gphase = 0.5 * cmath.phase(det)
    su = u * cmath.exp(-1j * gphase)
    m00, m10 = complex(su[0, 0]), complex(su[1, 0])
    gamma = math.acos(min(1.0, abs(m00)))
    alpha = cmath.phase(m00) if abs(m00) > 1e-13 else 0.0
    beta = cmath.phase(m10) if abs(m10) > 1e-13 else 0.0
    return GateParams(alpha, beta, gamma), gphase


@dataclass(frozen=True)
class Quaternion:
    """Quaternion ``a0 + a1*i + a2*j + a3*k``.

    The isomorphism with det-1 2x2 unitaries maps
    ``1 -> I, i -> -iZ, j -> -iX, k -> -iY``.
    """

    a0: float
    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        for v in (self.a0, self.a1, self.a2, self.a3):
            if not math.isfinite(v):
                raise ValueError("quaternion components must be finite")

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        a0, a1, a2, a3 = self.a0, self.a1, self.a2, self.a3
        b0, b1, b2, b3 = other.a0, other.a1, other.a2, other.a3
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.a0, -self.a1, -self.a2, -self.a3)

    def norm(self) -> float:
        return math.sqrt(self.a0**2 + self.a1**2 + self.a2**2 + self.a3**2)

    def normalized(self) -> "Quaternion":
        n = self.norm()
        if n == 0:
            raise ValueError("cannot normalize the zero quaternion")
        return Quaternion(self.a0 / n, self.a1 / n, self.a2 / n, self.a3 / n)


def to_quaternion(u, tol: float = 1e-9) -> Quaternion:
    """Quaternion of a det-1 2x2 unitary (``u = a0*I - a1*iZ - a2*iX - a3*iY``)."""
    u = as_unitary(u, 2)
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    if abs(det - 1.0) > tol:
        raise ValueError(f"determinant must be 1 (got {det:.6g}); normalize first")
    m00, m01 = complex(u[0, 0]), complex(u[0, 1])
    m10, m11 = complex(u[1, 0]), complex(u[1, 1])
    return Quaternion(
        0.5 * (m00.real + m11.real),
        0.5 * (m11.imag - m00.imag),
        -0.5 * (m10.imag + m01.imag),
        0.5 * (m10.real - m01.real),
    )


def from_quaternion(q: Quaternion) -> np.ndarray:
    """Inverse of :func:`to_quaternion`."""
    return np.array(
        [
            [q.a0 - 1j * q.a1, -q.a3 - 1j * q.a2],
            [q.a3 - 1j * q.a2, q.a0 + 1j * q.a1],
        ]
    )


class WeylCoords(NamedTuple):
    """Canonical two-qubit interaction coefficients, ``pi/2 >= c1 >= c2 >= c3 >= 0``."""

    c1: float
    c2: float
    c3: float


_Y = np.array([[0.0, -1j], [1j, 0.0]])
_YY = np.kron(_Y, _Y)


def _canonical_weyl(raw: np.ndarray) -> WeylCoords:
    # Quotient by mod-pi shifts, coordinate sign flips and permutations.
    # Sorted representatives with c1 <= pi/2 are unique (boundary points
    # coincide across patterns), so the lexicographic minimum is canonical.
    best = None
    for signs in itertools.product((1.0, -1.0), repeat=3):
        v = np.mod(raw * np.array(signs), PI)
        v = np.sort(v)[::-1]
        if v[0] <= PI / 2 + 1e-9:
            cand = (float(v[0]), float(v[1]), float(v[2]))
            if best is None or cand < best:
                best = cand
    assert best is not None  # flipping every component > pi/2 always qualifies
    return WeylCoords(*best)


def weyl_coordinates(u, tol: float = UNITARY_TOL) -> WeylCoords:
    """Weyl-chamber coordinates of a two-qubit unitary.

    Invariant under single-qubit rotations before/after ``u``: computed from
    the spectrum of ``m = v (YY v^T YY)`` with ``v`` the det-normalized gate
    (the eigenphases of ``m`` are local invariants), then canonicalized.
    """
    u = as_unitary(u, 4, tol)
    det = complex(np.linalg.det(u))
    v = u / det**0.25
    m = v @ (_YY @ v.T @ _YY)
    ang = np.angle(np.linalg.eigvals(m)) / PI  # in (-1, 1]
    ang = np.where(ang <= -0.5, ang + 2.0, ang)
    s = np.sort(ang / 2.0)[::-1]
    shift = int(round(float(s.sum())))
    s[:shift] -= 1.0
    s = np.roll(s, -shift)
    raw = np.array([s[0] + s[1], s[0] + s[2], s[1] + s[2]]) * PI
    return _canonical_weyl(raw)


_INV_SQRT2 = 1.0 / math.sqrt(2.0)

_FIXED_GATES = {
    "CZ": np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "SWAP": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
    "ISWAP": np.array(
        [[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
    # Principal square root of ISWAP.
    "SQISW": np.array(
        [
            [1, 0, 0, 0],
            [0, _INV_SQRT2, 1j * _INV_SQRT2, 0],
            [0, 1j * _INV_SQRT2, _INV_SQRT2, 0],
            [0, 0, 0, 1],
        ],
        dtype=complex,
    ),
}


def standard_gate(name: str, *params: float) -> np.ndarray:
    """Standard two-qubit gate by name.

    Fixed gates: CZ, CNOT, SWAP, ISWAP, SQISW.  Parameterized:
    ``CPHASE(phi)`` and ``FSIM(theta, phi)`` (which sends ``|11>`` to
    ``exp(-i*phi)|11>``).
    """
    key = name.upper()
    if key in _FIXED_GATES:
        if params:
            raise ValueError(f"{key} takes no parameters")
        return _FIXED_GATES[key].copy()
    if key == "CPHASE":
        if len(params) != 1:
            raise ValueError("CPHASE takes one angle")
        return np.diag([1.0, 1.0, 1.0, cmath.exp(1j * float(params[0]))])
    if key == "FSIM":
        if len(params) != 2:
            raise ValueError("FSIM takes two angles")
        theta, phi = float(params[0]), float(params[1])
        c, s = math.cos(theta), math.sin(theta)
        return np.array(
            [
                [1, 0, 0, 0],
                [0, c, -1j * s, 0],
                [0, -1j * s, c, 0],
                [0, 0, 0, cmath.exp(-1j * phi)],
            ],
            dtype=complex,
        )
    raise ValueError(f"unknown gate {name!r}")
