import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import haar_unitary, random_gate_params
from phasepulse.schemes import (
    CliffordCategory,
    Pulse,
    PulseSequence,
    Scheme,
    absorb_z,
    clifford_table,
    four_pulse,
    special_case,
    three_pulse,
    two_pulse,
    virtual_z,
)
from phasepulse.su2 import (
    GateParams,
    normalize_angle,
    params_from_unitary,
    phase_distance,
    unitary_from_params,
    x_rot,
    y_rot,
    z_rot,
)

PI = math.pi
H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def product_matches(compiled, target, tol=1e-10):
    return phase_distance(compiled.physical_unitary(), target) <= tol


def test_pulse_normalization():
    p = Pulse(3 * PI, 5 * PI / 2)
    assert p.sigma == PI  # rotation angles live in (-pi, pi]
    assert abs(p.phase - PI / 2) < 1e-12  # phases live in [-pi, pi)
    assert Pulse(-PI, 0.0).sigma == PI


def test_three_pulse_identity():
    cg = three_pulse(GateParams(0, 0, 0))
    sigmas = [p.sigma for p in cg.sequence]
    phases = [p.phase for p in cg.sequence]
    assert sigmas == [PI / 2, PI, PI / 2]
    assert phases == [0.0, -PI, 0.0]  # omega, phi, theta in time order
    assert cg.residual_z == 0.0 and cg.scheme is Scheme.THREE
    assert product_matches(cg, np.eye(2))


def test_three_pulse_hadamard():
    cg = three_pulse(GateParams(-PI / 2, -PI / 2, PI / 4))
    omega, phi, theta = cg.sequence
    assert abs(theta.phase) < 1e-12
    assert omega.phase == -PI  # -alpha-beta = pi, normalized
    assert abs(phi.phase + PI / 4) < 1e-12
    assert product_matches(cg, H)


def test_three_pulse_random():
    rng = np.random.default_rng(10)
    for _ in range(1000):
        p = random_gate_params(rng)
        assert product_matches(three_pulse(p), unitary_from_params(p))


def test_virtual_z_identity():
    cg = virtual_z(GateParams(0, 0, 0))
    assert cg.scheme is Scheme.VZ and len(cg.sequence) == 2
    assert abs(cg.residual_z) < 1e-12
    assert product_matches(cg, np.eye(2))


def test_virtual_z_x90_residual():
    # The Euler bridge gives residual 2*alpha + 2*gamma; for X90 that is
    # pi/2 (no branch reaches zero: the two solutions are 2a+2g and 2a-2g).
    cg = virtual_z(GateParams(0.0, -PI / 2, PI / 4))
    assert abs(cg.residual_z - PI / 2) < 1e-12
    assert phase_distance(z_rot(-cg.residual_z) @ cg.physical_unitary(), x_rot(PI / 2)) < 1e-10


def test_virtual_z_contract_random():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        p = random_gate_params(rng)
        cg = virtual_z(p)
        target = unitary_from_params(p)
        assert phase_distance(z_rot(-cg.residual_z) @ cg.physical_unitary(), target) < 1e-10
        # residual == -(theta+phi+omega) for the bridge angles
        bridge_sum = (-p.alpha + p.beta) + (PI - 2 * p.gamma) + (-p.alpha - p.beta - PI)
        assert abs(normalize_angle(cg.residual_z + bridge_sum)) < 1e-10
        assert all(p_.sigma == PI / 2 for p_ in cg.sequence)


def test_four_pulse():
    assert product_matches(four_pulse(GateParams(0, 0, 0)), np.eye(2))
    rng = np.random.default_rng(12)
    for _ in range(300):
        p = random_gate_params(rng)
        f = four_pulse(p)
        assert len(f.sequence) == 4
        assert all(p_.sigma == PI / 2 for p_ in f.sequence)
        assert product_matches(f, unitary_from_params(p))
        # splitting the X180 leaves the product identical
        assert phase_distance(f.physical_unitary(), three_pulse(p).physical_unitary()) < 1e-12


def test_two_pulse_degenerate_sigma():
    cg = two_pulse(GateParams(0, 0, PI / 2))
    assert cg.elided == 1 and len(cg.sequence) == 1
    assert product_matches(cg, unitary_from_params(GateParams(0, 0, PI / 2)))


def test_two_pulse_hadamard():
    cg = two_pulse(GateParams(-PI / 2, -PI / 2, PI / 4))
    assert abs(cg.sequence[1].sigma + PI / 2) < 1e-12  # sigma = 2*gamma - pi
    assert cg.sequence[0].sigma == PI
    assert product_matches(cg, H)


def test_two_pulse_random():
    rng = np.random.default_rng(13)
    for _ in range(1000):
        p = random_gate_params(rng)
        cg = two_pulse(p)
        assert product_matches(cg, unitary_from_params(p))


def test_special_identity():
    cg = special_case(np.exp(0.3j) * np.eye(2))
    assert cg is not None and len(cg.sequence) == 0
    assert cg.scheme is Scheme.SPECIAL


def test_special_y180():
    cg = special_case(y_rot(PI))
    assert cg is not None
    assert [(p.sigma, p.phase) for p in cg.sequence] == [(PI, -PI / 2)]


def test_special_z90():
    cg = special_case(z_rot(PI / 2))
    assert cg is not None
    phases = [p.phase for p in cg.sequence]
    assert np.allclose(phases, [-3 * PI / 8, 3 * PI / 8], atol=1e-12)
    assert all(p.sigma == PI for p in cg.sequence)
    assert product_matches(cg, z_rot(PI / 2))


def test_special_antidiagonal_and_diagonal_random():
    rng = np.random.default_rng(14)
    for _ in range(100):
        a, b = np.exp(1j * rng.uniform(-PI, PI, 2))
        anti = np.array([[0, a], [b, 0]], dtype=complex)
        cg = special_case(anti)
        assert cg is not None and len(cg.sequence) == 1
        assert product_matches(cg, anti)
        diag = np.diag([a, b])
        cg = special_case(diag)
        assert cg is not None and len(cg.sequence) <= 2
        assert product_matches(cg, diag)


def test_special_rejects_generic():
    rng = np.random.default_rng(15)
    for _ in range(100):
        u = haar_unitary(2, rng)
        assert special_case(u) is None


def test_special_never_longer_than_three():
    rng = np.random.default_rng(16)
    for entry in clifford_table():
        cg = special_case(entry.matrix)
        assert cg is not None and len(cg.sequence) <= 2


def test_clifford_table_shape():
    table = clifford_table()
    assert len(table) == 24
    total = sum(len(e.sequence) for e in table)
    assert total == 38
    assert abs(total / 24 - 19 / 12) < 1e-15
    counts = {cat: 0 for cat in CliffordCategory}
    for e in table:
        counts[e.category] += 1
        assert len(e.sequence) in (0, 1, 2)
        assert phase_distance(e.sequence.unitary(), e.matrix) < 1e-10
    assert counts[CliffordCategory.PAULI_ROT] == 10
    assert counts[CliffordCategory.HADAMARD_COUSIN] == 6
    assert counts[CliffordCategory.Y_ANALOG] == 8


def test_clifford_antidiagonal_cousins_single_pulse():
    s = 1 / math.sqrt(2)
    for e in clifford_table():
        if e.category is CliffordCategory.HADAMARD_COUSIN and abs(e.axis[2]) < 1e-12:
            assert len(e.sequence) == 1
    # the (1,1,0)/sqrt2 axis is present
    assert any(
        e.axis is not None and np.allclose(e.axis, (s, s, 0)) for e in clifford_table()
    )


def test_clifford_table_distinct_and_closed():
    table = clifford_table()
    for i in range(24):
        for j in range(i + 1, 24):
            assert phase_distance(table[i].matrix, table[j].matrix) > 1e-6
    # group closure: products land back in the table (mod phase)
    rng = np.random.default_rng(17)
    for _ in range(60):
        i, j = rng.integers(0, 24, 2)
        prod = table[i].matrix @ table[j].matrix
        assert any(phase_distance(prod, e.matrix) < 1e-8 for e in table)


def test_x180_phase_reflection_identity():
    # Z(-t) X180 Z(t) == Z(p-t) X180 Z(p+t), exactly (not just mod phase).
    rng = np.random.default_rng(18)
    for _ in range(1000):
        t, p = rng.uniform(-PI, PI, 2)
        lhs = z_rot(-t) @ x_rot(PI) @ z_rot(t)
        rhs = z_rot(p - t) @ x_rot(PI) @ z_rot(p + t)
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_absorb_z_noop():
    p = GateParams(0.3, -0.7, 0.9)
    cg = three_pulse(p)
    same = absorb_z(cg, 0.0, 0.0)
    assert [(q.sigma, q.phase) for q in same.sequence] == [
        (q.sigma, q.phase) for q in cg.sequence
    ]


def test_absorb_z_hadamard_example():
    cg = three_pulse(GateParams(-PI / 2, -PI / 2, PI / 4))
    shifted = absorb_z(cg, PI / 2, 0.0)
    assert phase_distance(shifted.physical_unitary(), z_rot(PI / 2) @ H) < 1e-10


def test_absorb_z_random():
    rng = np.random.default_rng(19)
    for _ in range(500):
        p = random_gate_params(rng)
        dl, dr = rng.uniform(-PI, PI, 2)
        target = unitary_from_params(p)
        shifted = absorb_z(three_pulse(p), dl, dr)
        assert phase_distance(shifted.physical_unitary(), z_rot(dl) @ target @ z_rot(dr)) < 1e-10
        shifted2 = absorb_z(two_pulse(p), dl, dr)
        assert phase_distance(shifted2.physical_unitary(), z_rot(dl) @ target @ z_rot(dr)) < 1e-10


def test_absorb_z_two_pulse_elided():
    # gamma = pi/2 elides the variable pulse; absorption still works via the
    # X180 phase-reflection identity alone
    rng = np.random.default_rng(21)
    for _ in range(50):
        p = GateParams(rng.uniform(-PI, PI), rng.uniform(-PI, PI), PI / 2)
        dl, dr = rng.uniform(-PI, PI, 2)
        cg = two_pulse(p)
        assert cg.elided == 1
        shifted = absorb_z(cg, dl, dr)
        target = unitary_from_params(p)
        assert phase_distance(shifted.physical_unitary(), z_rot(dl) @ target @ z_rot(dr)) < 1e-10


def test_absorb_z_wrong_scheme():
    with pytest.raises(ValueError):
        absorb_z(virtual_z(GateParams(0, 0, 0)), 0.1, 0.2)
    with pytest.raises(ValueError):
        absorb_z(three_pulse(GateParams(0, 0, 0)), math.inf, 0.0)


def test_fixed_angle_domain():
    rng = np.random.default_rng(20)
    for _ in range(200):
        p = random_gate_params(rng)
        for cg in (three_pulse(p), four_pulse(p)):
            assert all(q.sigma in (PI / 2, PI) for q in cg.sequence)
        assert all(q.sigma == PI / 2 for q in virtual_z(p).sequence)


@settings(max_examples=150, deadline=None)
@given(
    st.floats(-PI, PI - 1e-9),
    st.floats(-PI, PI - 1e-9),
    st.floats(0, PI / 2),
    st.floats(-3, 3),
    st.floats(-3, 3),
)
def test_absorb_property(alpha, beta, gamma, dl, dr):
    p = GateParams(alpha, beta, gamma)
    target = unitary_from_params(p)
    shifted = absorb_z(three_pulse(p), dl, dr)
    assert phase_distance(shifted.physical_unitary(), z_rot(dl) @ target @ z_rot(dr)) < 1e-10


def test_sequence_time_ordering():
    # index 0 acts first: the product is applied right-to-left.
    seq = PulseSequence.of((PI / 2, 0.0), (PI, 0.25))
    manual = Pulse(PI, 0.25).unitary() @ Pulse(PI / 2, 0.0).unitary()
    assert np.max(np.abs(seq.unitary() - manual)) < 1e-15
