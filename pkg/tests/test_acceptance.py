"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import itertools
import math
import time
from contextlib import contextmanager

import numpy as np

from conftest import random_gate_params
from phasepulse.carrier import (
    Segment,
    carry_defect,
    carry_map,
    is_phase_carrier,
    segment_of,
)
from phasepulse.circuit import (
    CompilePolicy,
    PolicyMode,
    compile_circuit,
    parse_circuit,
    simulate_schedule,
)
from phasepulse.coverage import (
    AngleTriple,
    coverage_fraction,
    covers_su2,
    haar_su2,
)
from phasepulse.pulsesim import constant_envelope, drive_unitary, gaussian_envelope, integrate_sigma
from phasepulse.schemes import (
    absorb_z,
    clifford_table,
    four_pulse,
    three_pulse,
    two_pulse,
    virtual_z,
)
from phasepulse.su2 import (
    conjugated_x,
    normalize_angle,
    params_from_unitary,
    phase_distance,
    standard_gate,
    unitary_from_params,
    weyl_coordinates,
    z_rot,
)

PI = math.pi


@contextmanager
def criterion(number: int, label: str):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number:02d} {label}: FAIL")
        raise
    print(f"ACCEPTANCE {number:02d} {label}: PASS")


def u_line(q, p):
    return f"U q{q} {p.alpha!r} {p.beta!r} {p.gamma!r}"


def test_criterion_1_scheme_exactness():
    with criterion(1, "scheme exactness (3/4/2-pulse, 1e4 targets each)"):
        rng = np.random.default_rng(100)
        start = time.monotonic()
        worst = 0.0
        for _ in range(10_000):
            target = haar_su2(rng)
            p, _ = params_from_unitary(target)
            for scheme in (three_pulse, four_pulse, two_pulse):
                dev = phase_distance(scheme(p).physical_unitary(), target)
                worst = max(worst, dev)
        elapsed = time.monotonic() - start
        assert worst <= 1e-9, f"worst deviation {worst}"
        assert elapsed < 10.0, f"took {elapsed:.1f}s"


def test_criterion_2_clifford_pulse_budget():
    with criterion(2, "Clifford table: 38 pulses over 24 gates"):
        table = clifford_table()
        assert len(table) == 24
        total = sum(len(e.sequence) for e in table)
        assert total == 38
        assert abs(total / 24 - 19 / 12) < 1e-15
        for entry in table:
            assert phase_distance(entry.sequence.unitary(), entry.matrix) <= 1e-10


def test_criterion_3_carrier_golden_set():
    with criterion(3, "carrier classification golden set"):
        rng = np.random.default_rng(101)
        carriers = [standard_gate(n) for n in ("SWAP", "CZ", "ISWAP")]
        carriers += [standard_gate("CPHASE", rng.uniform(-PI, PI)) for _ in range(20)]
        for u in carriers:
            assert is_phase_carrier(u)
            cmap = carry_map(u)
            for _ in range(100):
                t0, t1 = rng.uniform(-PI, PI, 2)
                assert carry_defect(u, cmap, t0, t1) <= 1e-10
        assert not is_phase_carrier(standard_gate("CNOT"))
        assert not is_phase_carrier(standard_gate("SQISW"))


def test_criterion_4_carrier_segments():
    with criterion(4, "carriers land on the two Weyl segments"):
        rng = np.random.default_rng(102)
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        eye = np.eye(2, dtype=complex)
        locals4 = [np.kron(a, b) for a in (eye, x) for b in (eye, x)]
        swap = standard_gate("SWAP")
        for k in range(500):
            base = locals4[rng.integers(0, 4)]
            if k % 2:
                base = swap @ base
            u = np.diag(np.exp(1j * rng.uniform(-PI, PI, 4))) @ base
            assert is_phase_carrier(u)
            seg = segment_of(weyl_coordinates(u), tol=1e-8)
            assert seg is not Segment.OFF_SEGMENT
        sq = weyl_coordinates(standard_gate("SQISW"))
        assert segment_of(sq) is Segment.OFF_SEGMENT
        assert np.max(np.abs(np.array(sq) - np.array([PI / 4, PI / 4, 0.0]))) <= 1e-8


def test_criterion_5_fixed_angle_coverage():
    with criterion(5, "coverage predicate and empirical coverage"):
        start = time.monotonic()
        hits = 0
        for combo in itertools.product((PI, PI / 2, -PI / 2), repeat=3):
            expected = sum(1 for w in combo if w == PI) == 1
            assert covers_su2(AngleTriple(*combo)) == expected
            hits += expected
        assert hits == 12
        grid = [k * PI / 7 for k in range(-7, 8)]
        for combo in itertools.product(grid, repeat=3):
            assert not covers_su2(AngleTriple(*combo))
        assert coverage_fraction(AngleTriple(PI / 2, PI, PI / 2), 500) == 1.0
        assert coverage_fraction(AngleTriple(PI / 2, PI / 2, PI / 2), 500) < 0.95
        elapsed = time.monotonic() - start
        assert elapsed < 60.0, f"took {elapsed:.1f}s"


def test_criterion_6_enc_pulse_reduction():
    with criterion(6, "ENC benchmark pulse ratio -> 5/6 at depth 100"):
        rng = np.random.default_rng(103)
        lines = ["qubits 2"]
        for _ in range(100):
            lines += [
                u_line(0, random_gate_params(rng)),
                u_line(1, random_gate_params(rng)),
                "G2 SQISW q0 q1",
            ]
        lines += ["M q0", "M q1"]
        ir = parse_circuit("\n".join(lines))
        enc = compile_circuit(ir, CompilePolicy(PolicyMode.ENC_MIXED))
        three = compile_circuit(ir, CompilePolicy(PolicyMode.THREE_ALWAYS))
        ratio = enc.stats.pulses / three.stats.pulses
        assert abs(ratio - 5 / 6) <= 0.02 * (5 / 6), f"ratio {ratio}"
        assert simulate_schedule(enc, ir) <= 1e-8
        assert simulate_schedule(three, ir) <= 1e-8


def test_criterion_7_end_to_end_circuits():
    with criterion(7, "200 random circuits per legal policy re-simulate"):
        rng = np.random.default_rng(104)
        pools = {
            PolicyMode.THREE_ALWAYS: ["G2 CZ q0 q1", "G2 CNOT q0 q1", "G2 SQISW q1 q0",
                                      "G2 FSIM(0.4,0.9) q0 q1", "G2 ISWAP q0 q1"],
            PolicyMode.VZ_CARRY: ["G2 CZ q0 q1", "G2 SWAP q0 q1", "G2 ISWAP q1 q0",
                                  "G2 CPHASE(0.8) q0 q1"],
            PolicyMode.ENC_MIXED: ["G2 SQISW q0 q1", "G2 CPHASE(1.1) q0 q1",
                                   "G2 FSIM(0.4,0.9) q1 q0", "G2 ISWAP q0 q1"],
            PolicyMode.AUTO: ["G2 CZ q0 q1", "G2 CNOT q0 q1", "G2 SQISW q0 q1",
                              "G2 FSIM(1.2,0.3) q1 q0", "G2 SWAP q0 q1"],
        }
        for mode, pool in pools.items():
            for _ in range(200):
                depth = int(rng.integers(1, 21))
                lines = ["qubits 2"]
                for _ in range(depth):
                    if rng.integers(0, 3) < 2:
                        lines.append(u_line(int(rng.integers(0, 2)), random_gate_params(rng)))
                    else:
                        lines.append(pool[int(rng.integers(0, len(pool)))])
                if rng.integers(0, 2):
                    lines += ["M q0", "M q1"]
                ir = parse_circuit("\n".join(lines))
                sched = compile_circuit(ir, CompilePolicy(mode))
                assert simulate_schedule(sched, ir) <= 1e-8


def test_criterion_8_virtual_z_residual():
    with criterion(8, "virtual-Z residual contract (1e4 targets)"):
        rng = np.random.default_rng(105)
        for _ in range(10_000):
            target = haar_su2(rng)
            p, _ = params_from_unitary(target)
            cg = virtual_z(p)
            dev = phase_distance(z_rot(-cg.residual_z) @ cg.physical_unitary(), target)
            assert dev <= 1e-9
            bridge_sum = (-p.alpha + p.beta) + (PI - 2 * p.gamma) + (-p.alpha - p.beta - PI)
            assert abs(normalize_angle(cg.residual_z - -bridge_sum)) <= 1e-9


def test_criterion_9_z_absorption():
    with criterion(9, "Z-absorption phase update (1e3 cases)"):
        rng = np.random.default_rng(106)
        for _ in range(1000):
            p = random_gate_params(rng)
            dl, dr = rng.uniform(-2 * PI, 2 * PI, 2)
            target = unitary_from_params(p)
            shifted = absorb_z(three_pulse(p), dl, dr)
            dev = phase_distance(
                shifted.physical_unitary(), z_rot(dl) @ target @ z_rot(dr)
            )
            assert dev <= 1e-10


def test_criterion_10_pulse_simulation():
    with criterion(10, "drive integration matches conjugated X (100 pairs)"):
        rng = np.random.default_rng(107)
        for k in range(100):
            area = rng.uniform(0.05, 2 * PI)
            phase = rng.uniform(-PI, PI)
            if k % 2:
                env = constant_envelope(area, phase, n_samples=501)
            else:
                env = gaussian_envelope(area, phase, n_samples=801)
            sigma = integrate_sigma(env)
            dev = phase_distance(drive_unitary(env), conjugated_x(sigma, phase))
            assert dev <= 1e-6
