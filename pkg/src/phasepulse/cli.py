"""Command line front end.

Subcommands: compile, classify, stats, verify, uniqueness, pulsesim.
All angles everywhere are radians; emitted schedules are time-ordered
(the first PULSE line acts first).

Exit codes: 0 success, 1 input error, 2 policy/legality error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import circuit as circ
from . import coverage as cov
from . import pulsesim as psim
from .carrier import classify
from .su2 import as_unitary, phase_distance, standard_gate

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_POLICY = 2
EXIT_VERIFY = 3

_UNITS_NOTE = (
    "All angles are radians. Schedules are time-ordered: the first PULSE "
    "line acts first."
)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_compile(args) -> int:
    try:
        text = _read_input(args.circuit)
    except OSError as exc:
        return _fail(str(exc), EXIT_INPUT)
    try:
        ir = circ.parse_circuit(text)
    except circ.CircuitError as exc:
        return _fail(str(exc), EXIT_INPUT)
    policy = circ.CompilePolicy(circ.PolicyMode(args.policy), args.special_cases)
    try:
        schedule = circ.compile_circuit(ir, policy)
    except circ.IllegalPolicyError as exc:
        return _fail(str(exc), EXIT_POLICY)
    out = schedule.to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
        print(schedule.stats.stats_line())
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _gate_from_spec(spec: str) -> np.ndarray:
    if spec.upper() == "CUSTOM":
        tokens = sys.stdin.read().split()
        if len(tokens) != 16:
            raise ValueError("CUSTOM expects 16 're,im' pairs on stdin")
        entries = []
        for tok in tokens:
            re_s, im_s = tok.split(",")
            entries.append(complex(float(re_s), float(im_s)))
        return np.array(entries, dtype=complex).reshape(4, 4)
    m = circ._PARAM_GATE_RE.match(spec)
    if m:
        args = [float(a) for a in m.group(2).split(",")] if m.group(2) else []
        return standard_gate(m.group(1), *args)
    return standard_gate(spec)


def cmd_classify(args) -> int:
    try:
        matrix = _gate_from_spec(args.gate)
        matrix = as_unitary(matrix, 4, tol=args.tolerance)
    except ValueError as exc:
        return _fail(str(exc), EXIT_INPUT)
    result = classify(matrix)
    print(f"gate: {args.gate}")
    print(f"phase_carrier: {'yes' if result.is_carrier else 'no'}")
    if result.permutation is not None:
        print(f"permutation: {result.permutation.mapping}")
        (a, b), (c, d) = result.carry.matrix
        print(f"carry_map: phi0 = {a}*theta0 + {b}*theta1, phi1 = {c}*theta0 + {d}*theta1")
    print(f"enc: {'yes' if result.is_enc else 'no'}")
    if result.enc_map is not None:
        p, q = result.enc_map
        print(f"generalized_enc: yes (phi0 = {p}*theta, phi1 = {q}*theta)")
    else:
        print("generalized_enc: no")
    print(f"weyl: ({result.weyl.c1:.9f}, {result.weyl.c2:.9f}, {result.weyl.c3:.9f})")
    print(f"segment: {result.segment.value}")
    return EXIT_OK


def cmd_stats(args) -> int:
    try:
        ir = circ.parse_circuit(_read_input(args.circuit))
    except (OSError, circ.CircuitError) as exc:
        return _fail(str(exc), EXIT_INPUT)
    baseline = None
    for mode in circ.PolicyMode:
        try:
            schedule = circ.compile_circuit(
                ir, circ.CompilePolicy(mode, args.special_cases)
            )
        except circ.IllegalPolicyError as exc:
            print(f"{mode.value}: illegal ({exc.gate_name})")
            continue
        pulses = schedule.stats.pulses
        if mode is circ.PolicyMode.THREE_ALWAYS:
            baseline = pulses
        ratio = f" ratio={pulses / baseline:.4f}" if baseline else ""
        print(f"{mode.value}: pulses={pulses}{ratio}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        ir = circ.parse_circuit(_read_input(args.circuit))
        events = circ.parse_schedule(_read_input(args.schedule))
    except (OSError, circ.CircuitError) as exc:
        return _fail(str(exc), EXIT_INPUT)
    try:
        deviation = circ.simulate_schedule(events, ir)
    except circ.ScheduleMismatchError as exc:
        return _fail(str(exc), EXIT_INPUT)
    print(f"max deviation: {deviation:.6g}")
    return EXIT_OK if deviation <= args.tolerance else EXIT_VERIFY


def cmd_uniqueness(args) -> int:
    triple = cov.AngleTriple(args.omega1, args.omega2, args.omega3)
    u_part, v_part = cov.product_coeffs(triple)
    covers = cov.covers_su2(triple)
    print(f"angles: ({triple.omega1:.9f}, {triple.omega2:.9f}, {triple.omega3:.9f})")
    print(f"covers_su2: {'yes' if covers else 'no'}")
    b = u_part.as_tuple()
    print(f"u_coeffs: b00={b[0]:.9f} b01={b[1]:.9f} b10={b[2]:.9f} b11={b[3]:.9f}")
    print(f"v_coeffs: ({v_part[0]:.9f}, {v_part[1]:.9f}, {v_part[2]:.9f}, {v_part[3]:.9f})")
    if args.samples > 0:
        fraction = cov.coverage_fraction(triple, args.samples, seed=args.seed)
        print(f"coverage: {fraction:.4f} ({args.samples} samples, seed {args.seed})")
    return EXIT_OK


def cmd_pulsesim(args) -> int:
    if args.shape == "const":
        env = psim.constant_envelope(args.area, args.phase, n_samples=args.steps)
    else:
        env = psim.gaussian_envelope(args.area, args.phase, n_samples=args.steps)
    sigma = psim.integrate_sigma(env)
    try:
        u = psim.drive_unitary(env)
    except ValueError as exc:
        return _fail(str(exc), EXIT_INPUT)
    from .su2 import conjugated_x

    deviation = phase_distance(u, conjugated_x(sigma, env.phase))
    print(f"sigma: {sigma:.12g}")
    for row in u:
        print("  " + "  ".join(f"{z.real:+.9f}{z.imag:+.9f}j" for z in row))
    print(f"deviation from closed form: {deviation:.6g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasepulse",
        description="Compile two-qubit circuits to phase-shifted pulse schedules. "
        + _UNITS_NOTE,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "compile",
        help="compile a circuit to a pulse schedule",
        description="Compile a circuit file ('-' for stdin) to a pulse schedule. "
        + _UNITS_NOTE,
    )
    p.add_argument("circuit", help="circuit file, or '-' for stdin")
    p.add_argument(
        "--policy",
        choices=[m.value for m in circ.PolicyMode],
        default=circ.PolicyMode.THREE_ALWAYS.value,
        help="compilation policy (default: three-always)",
    )
    p.add_argument(
        "--no-special-cases",
        dest="special_cases",
        action="store_false",
        help="disable the short-sequence dispatcher for special gates",
    )
    p.add_argument("-o", "--output", help="write the schedule here instead of stdout")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser(
        "classify",
        help="classify a two-qubit gate",
        description="Classify a two-qubit gate: carrier/ENC verdicts, carry map, "
        "Weyl coordinates (radians), segment. Use gate names like CZ, "
        "CPHASE(0.5), or CUSTOM (16 're,im' pairs on stdin). " + _UNITS_NOTE,
    )
    p.add_argument("gate", help="gate name, CPHASE(phi), FSIM(theta,phi), or CUSTOM")
    p.add_argument("--tolerance", type=float, default=1e-8, help="unitarity tolerance")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser(
        "stats",
        help="compare pulse counts across policies",
        description="Compile a circuit under every legal policy and print the "
        "pulse counts and ratios against three-always. " + _UNITS_NOTE,
    )
    p.add_argument("circuit", help="circuit file, or '-' for stdin")
    p.add_argument(
        "--no-special-cases", dest="special_cases", action="store_false",
        help="disable the short-sequence dispatcher",
    )
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser(
        "verify",
        help="re-simulate a schedule against its circuit",
        description="Re-simulate a schedule against its circuit and report the "
        "max deviation up to global phase. " + _UNITS_NOTE,
    )
    p.add_argument("circuit", help="circuit file, or '-' for stdin")
    p.add_argument("schedule", help="schedule file")
    p.add_argument("--tolerance", type=float, default=1e-8, help="pass/fail threshold")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "uniqueness",
        help="coverage analysis of a fixed-angle triple",
        description="Report whether three fixed rotation angles (radians) can "
        "reach every single-qubit gate, with the product coefficients and an "
        "empirical coverage fraction. " + _UNITS_NOTE,
    )
    p.add_argument("--omega1", type=float, required=True, help="first rotation angle (radians)")
    p.add_argument("--omega2", type=float, required=True, help="second rotation angle (radians)")
    p.add_argument("--omega3", type=float, required=True, help="third rotation angle (radians)")
    p.add_argument("--samples", type=int, default=200, help="coverage sample count (0 to skip)")
    p.add_argument("--seed", type=int, default=0, help="seed for the coverage sampler")
    p.set_defaults(func=cmd_uniqueness)

    p = sub.add_parser(
        "pulsesim",
        help="integrate a drive envelope",
        description="Integrate the rotating-frame drive for an envelope shape and "
        "compare against the closed-form conjugated X rotation. " + _UNITS_NOTE,
    )
    p.add_argument("--shape", choices=["const", "gauss"], default="const")
    p.add_argument("--area", type=float, required=True, help="pulse area (radians)")
    p.add_argument("--phase", type=float, default=0.0, help="drive phase shift (radians)")
    p.add_argument("--steps", type=int, default=2001, help="number of envelope samples")
    p.set_defaults(func=cmd_pulsesim)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
