"""Shared test helpers: random unitaries and independent oracles."""

import math

import numpy as np

from phasepulse.su2 import GateParams

PI = math.pi

_Y = np.array([[0.0, -1j], [1j, 0.0]])
_YY = np.kron(_Y, _Y)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix with phase fix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_gate_params(rng: np.random.Generator) -> GateParams:
    return GateParams(
        rng.uniform(-PI, PI), rng.uniform(-PI, PI), rng.uniform(0.0, PI / 2)
    )


def makhlin_invariants(u: np.ndarray) -> tuple[float, float, float]:
    """Local invariants (g1, g2, g3) computed directly from the matrix."""
    det = complex(np.linalg.det(u))
    v = np.asarray(u, dtype=complex) / det**0.25
    m = v @ (_YY @ v.T @ _YY)
    tr = complex(np.trace(m))
    g12 = tr**2 / 16.0
    g3 = (tr**2 - complex(np.trace(m @ m))) / 4.0
    return g12.real, g12.imag, g3.real


def makhlin_from_weyl(c1: float, c2: float, c3: float) -> tuple[float, float, float]:
    """The same invariants from Weyl coordinates (closed form)."""
    g1 = (
        math.cos(c1) ** 2 * math.cos(c2) ** 2 * math.cos(c3) ** 2
        - math.sin(c1) ** 2 * math.sin(c2) ** 2 * math.sin(c3) ** 2
    )
    g2 = 0.25 * math.sin(2 * c1) * math.sin(2 * c2) * math.sin(2 * c3)
    g3 = 4 * g1 - math.cos(2 * c1) * math.cos(2 * c2) * math.cos(2 * c3)
    return g1, g2, g3
