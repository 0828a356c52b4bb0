"""Two-qubit circuit IR, text parser, phase-carrying compilation, schedules.

The compiler maintains one pending "frame" angle per qubit with the
invariant ``physical so far == (z_rot(f0) x z_rot(f1)) @ ideal so far`` up
to a global phase.  Policies differ in how frames are created (virtual-Z
compilation), moved (carried through two-qubit gates), and retired
(measurements, or explicit pulses that zero them).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .carrier import CarryMap, carry_map, is_enc, is_generalized_enc, is_phase_carrier
from .schemes import (
    CompiledGate,
    Pulse,
    Scheme,
    special_case,
    three_pulse,
    virtual_z,
)
from .su2 import (
    GateParams,
    as_unitary,
    normalize_angle,
    params_from_unitary,
    phase_distance,
    standard_gate,
    unitary_from_params,
    z_rot,
)

PI = math.pi


class CircuitError(ValueError):
    pass


class CircuitSyntaxError(CircuitError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class IllegalPolicyError(CircuitError):
    def __init__(self, message: str, op_index: int, gate_name: str):
        super().__init__(message)
        self.op_index = op_index
        self.gate_name = gate_name


class ScheduleMismatchError(CircuitError):
    pass


@dataclass(frozen=True)
class Gate1:
    qubit: int
    params: GateParams

    @classmethod
    def from_matrix(cls, qubit: int, matrix) -> "Gate1":
        return cls(qubit, params_from_unitary(matrix)[0])

    def matrix(self) -> np.ndarray:
        return unitary_from_params(self.params)


@dataclass(frozen=True, eq=False)
class Gate2:
    """Two-qubit gate; ``matrix`` is in the order the qubits were named."""

    qubits: tuple[int, int]
    name: str
    matrix: np.ndarray

    def effective_matrix(self) -> np.ndarray:
        """The matrix in the fixed (qubit 0, qubit 1) basis."""
        if self.qubits == (0, 1):
            return self.matrix
        swap = standard_gate("SWAP")
        return swap @ self.matrix @ swap


@dataclass(frozen=True)
class Measure:
    qubit: int


Op = Gate1 | Gate2 | Measure


@dataclass(frozen=True)
class CircuitIR:
    n_qubits: int
    ops: tuple[Op, ...]

    def __post_init__(self):
        if self.n_qubits != 2:
            raise CircuitError(f"this compiler handles exactly 2 qubits, got {self.n_qubits}")
        measured: set[int] = set()
        for i, op in enumerate(self.ops):
            qubits = op.qubits if isinstance(op, Gate2) else (op.qubit,)
            for q in qubits:
                if not 0 <= q < self.n_qubits:
                    raise CircuitError(f"op {i}: qubit index {q} out of range")
                if q in measured:
                    raise CircuitError(f"op {i}: qubit {q} already measured")
            if isinstance(op, Gate2) and op.qubits[0] == op.qubits[1]:
                raise CircuitError(f"op {i}: two-qubit gate needs distinct qubits")
            if isinstance(op, Measure):
                measured.add(op.qubit)

    def gate2_ops(self) -> list[Gate2]:
        return [op for op in self.ops if isinstance(op, Gate2)]


_QUBIT_RE = re.compile(r"^q(\d+)$")
_PARAM_GATE_RE = re.compile(r"^([A-Z]+)\((.*)\)$")

_X90_PARAMS = GateParams(0.0, -PI / 2, PI / 4)
_X180_PARAMS = GateParams(0.0, -PI / 2, PI / 2)


def _parse_float(tok: str, line: int) -> float:
    try:
        value = float(tok)
    except ValueError:
        raise CircuitSyntaxError(f"expected a number, got {tok!r}", line) from None
    if not math.isfinite(value):
        raise CircuitSyntaxError(f"number must be finite, got {tok!r}", line)
    return value


def _parse_qubit(tok: str, n_qubits: int, line: int) -> int:
    m = _QUBIT_RE.match(tok)
    if not m:
        raise CircuitSyntaxError(f"expected a qubit like 'q0', got {tok!r}", line)
    q = int(m.group(1))
    if q >= n_qubits:
        raise CircuitSyntaxError(f"qubit {tok} out of range for {n_qubits} qubits", line)
    return q


def _format_angle(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # collapse -0.0
    return f"{x:.12g}"


def _parse_gate2(tokens: list[str], n_qubits: int, line: int) -> Gate2:
    spec = tokens[1]
    fixed = {"CZ", "CNOT", "SWAP", "ISWAP", "SQISW"}
    if spec in fixed:
        if len(tokens) != 4:
            raise CircuitSyntaxError(f"G2 {spec} takes two qubits", line)
        q0 = _parse_qubit(tokens[2], n_qubits, line)
        q1 = _parse_qubit(tokens[3], n_qubits, line)
        return Gate2((q0, q1), spec, standard_gate(spec))
    if spec == "CUSTOM":
        if len(tokens) != 4 + 16:
            raise CircuitSyntaxError("G2 CUSTOM takes two qubits and 16 re,im pairs", line)
        q0 = _parse_qubit(tokens[2], n_qubits, line)
        q1 = _parse_qubit(tokens[3], n_qubits, line)
        entries = []
        for tok in tokens[4:]:
            pieces = tok.split(",")
            if len(pieces) != 2:
                raise CircuitSyntaxError(f"expected 're,im', got {tok!r}", line)
            entries.append(complex(_parse_float(pieces[0], line), _parse_float(pieces[1], line)))
        matrix = np.array(entries, dtype=complex).reshape(4, 4)
        try:
            matrix = as_unitary(matrix, 4, tol=1e-8)
        except ValueError as exc:
            raise CircuitSyntaxError(f"CUSTOM matrix: {exc}", line) from None
        return Gate2((q0, q1), "CUSTOM", matrix)
    m = _PARAM_GATE_RE.match(spec)
    if m:
        name, arg_text = m.group(1), m.group(2)
        args = [_parse_float(a.strip(), line) for a in arg_text.split(",")] if arg_text else []
        if name == "CPHASE" and len(args) == 1:
            label = f"CPHASE({_format_angle(args[0])})"
        elif name == "FSIM" and len(args) == 2:
            label = f"FSIM({_format_angle(args[0])},{_format_angle(args[1])})"
        else:
            raise CircuitSyntaxError(f"unknown or malformed gate {spec!r}", line)
        if len(tokens) != 4:
            raise CircuitSyntaxError(f"G2 {name}(...) takes two qubits", line)
        q0 = _parse_qubit(tokens[2], n_qubits, line)
        q1 = _parse_qubit(tokens[3], n_qubits, line)
        return Gate2((q0, q1), label, standard_gate(name, *args))
    raise CircuitSyntaxError(f"unknown two-qubit gate {spec!r}", line)


def parse_circuit(text: str) -> CircuitIR:
    """Parse the line-based circuit format (see the package README).

    One op per line; ``#`` starts a comment; the first op line must be
    preceded by a ``qubits 2`` header.  All angles are radians.
    """
    n_qubits: int | None = None
    ops: list[Op] = []
    measured: set[int] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if head == "qubits":
            if n_qubits is not None:
                raise CircuitSyntaxError("duplicate 'qubits' header", line_no)
            if len(tokens) != 2:
                raise CircuitSyntaxError("usage: qubits 2", line_no)
            try:
                n_qubits = int(tokens[1])
            except ValueError:
                raise CircuitSyntaxError(f"expected an integer, got {tokens[1]!r}", line_no) from None
            if n_qubits != 2:
                raise CircuitSyntaxError("this compiler handles exactly 2 qubits", line_no)
            continue
        if n_qubits is None:
            raise CircuitSyntaxError("first statement must be 'qubits 2'", line_no)

        if head == "U":
            if len(tokens) != 5:
                raise CircuitSyntaxError("usage: U q<i> <alpha> <beta> <gamma>", line_no)
            q = _parse_qubit(tokens[1], n_qubits, line_no)
            a, b, g = (_parse_float(t, line_no) for t in tokens[2:5])
            try:
                op: Op = Gate1(q, GateParams(a, b, g))
            except ValueError as exc:
                raise CircuitSyntaxError(str(exc), line_no) from None
        elif head == "RZ":
            if len(tokens) != 3:
                raise CircuitSyntaxError("usage: RZ q<i> <theta>", line_no)
            q = _parse_qubit(tokens[1], n_qubits, line_no)
            theta = _parse_float(tokens[2], line_no)
            op = Gate1(q, GateParams(-0.5 * theta, 0.0, 0.0))
        elif head == "X90":
            if len(tokens) != 2:
                raise CircuitSyntaxError("usage: X90 q<i>", line_no)
            op = Gate1(_parse_qubit(tokens[1], n_qubits, line_no), _X90_PARAMS)
        elif head == "X180":
            if len(tokens) != 2:
                raise CircuitSyntaxError("usage: X180 q<i>", line_no)
            op = Gate1(_parse_qubit(tokens[1], n_qubits, line_no), _X180_PARAMS)
        elif head == "G2":
            if len(tokens) < 2:
                raise CircuitSyntaxError("G2 needs a gate name", line_no)
            op = _parse_gate2(tokens, n_qubits, line_no)
        elif head == "M":
            if len(tokens) != 2:
                raise CircuitSyntaxError("usage: M q<i>", line_no)
            op = Measure(_parse_qubit(tokens[1], n_qubits, line_no))
        else:
            raise CircuitSyntaxError(f"unknown op {head!r}", line_no)

        qubits = op.qubits if isinstance(op, Gate2) else (op.qubit,)
        for q in qubits:
            if q in measured:
                raise CircuitSyntaxError(f"qubit q{q} was already measured", line_no)
        if isinstance(op, Gate2) and op.qubits[0] == op.qubits[1]:
            raise CircuitSyntaxError("two-qubit gate needs distinct qubits", line_no)
        if isinstance(op, Measure):
            measured.add(op.qubit)
        ops.append(op)
    if n_qubits is None:
        raise CircuitSyntaxError("missing 'qubits 2' header", 1)
    return CircuitIR(n_qubits, tuple(ops))


def merge_adjacent_1q(ir: CircuitIR) -> CircuitIR:
    """Fuse runs of single-qubit gates on the same qubit into one gate.

    Gates separated only by ops on the *other* qubit commute with them and
    are fused too; a two-qubit gate or measurement on the qubit ends a run.
    """
    out: list[Op] = []
    open_idx: dict[int, int | None] = {q: None for q in range(ir.n_qubits)}
    for op in ir.ops:
        if isinstance(op, Gate1):
            idx = open_idx[op.qubit]
            if idx is not None:
                prev = out[idx]
                combined = op.matrix() @ prev.matrix()
                out[idx] = Gate1(op.qubit, params_from_unitary(combined)[0])
            else:
                open_idx[op.qubit] = len(out)
                out.append(op)
        elif isinstance(op, Gate2):
            for q in op.qubits:
                open_idx[q] = None
            out.append(op)
        else:
            open_idx[op.qubit] = None
            out.append(op)
    return CircuitIR(ir.n_qubits, tuple(out))


class PolicyMode(Enum):
    THREE_ALWAYS = "three-always"
    VZ_CARRY = "vz-carry"
    ENC_MIXED = "enc-mixed"
    AUTO = "auto"


@dataclass(frozen=True)
class CompilePolicy:
    mode: PolicyMode = PolicyMode.THREE_ALWAYS
    special_cases: bool = True


@dataclass(frozen=True)
class PulseEvent:
    qubit: int
    pulse: Pulse


@dataclass(frozen=True)
class Gate2Event:
    qubits: tuple[int, int]
    name: str


@dataclass(frozen=True)
class FrameEvent:
    qubit: int
    angle: float


Event = PulseEvent | Gate2Event | FrameEvent

_SCHEME_KEYS = ("vz", "three", "four", "two", "special")


@dataclass
class ScheduleStats:
    pulses: int = 0
    per_qubit: list[int] = field(default_factory=lambda: [0, 0])
    gates_1q: int = 0
    gates_2q: int = 0
    compiled_1q: int = 0
    frames: int = 0
    elided: int = 0
    schemes: dict[str, int] = field(
        default_factory=lambda: {k: 0 for k in _SCHEME_KEYS}
    )

    def pulses_per_1q(self) -> float:
        return self.pulses / self.gates_1q if self.gates_1q else 0.0

    def stats_line(self) -> str:
        parts = [f"pulses={self.pulses}"]
        parts += [f"q{q}={n}" for q, n in enumerate(self.per_qubit)]
        parts += [
            f"gates_1q={self.gates_1q}",
            f"gates_2q={self.gates_2q}",
            f"compiled_1q={self.compiled_1q}",
            f"pulses_per_1q={_format_angle(self.pulses_per_1q())}",
        ]
        parts += [f"{k}={self.schemes[k]}" for k in _SCHEME_KEYS]
        parts += [f"elided={self.elided}", f"frames={self.frames}"]
        return "# stats: " + " ".join(parts)


@dataclass(eq=False)
class PulseSchedule:
    n_qubits: int
    events: tuple[Event, ...]
    stats: ScheduleStats

    def to_text(self) -> str:
        lines = []
        for ev in self.events:
            if isinstance(ev, PulseEvent):
                lines.append(
                    f"PULSE q{ev.qubit} sigma={_format_angle(ev.pulse.sigma)} "
                    f"phase={_format_angle(ev.pulse.phase)}"
                )
            elif isinstance(ev, Gate2Event):
                lines.append(f"GATE2 {ev.name} q{ev.qubits[0]} q{ev.qubits[1]}")
            else:
                lines.append(f"FRAME q{ev.qubit} z={_format_angle(ev.angle)}")
        lines.append(self.stats.stats_line())
        return "\n".join(lines) + "\n"


def parse_schedule(text: str) -> list[Event]:
    """Parse schedule text back into events (comment lines are skipped)."""
    events: list[Event] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "PULSE" and len(tokens) == 4:
            q = _parse_qubit(tokens[1], 2, line_no)
            if not (tokens[2].startswith("sigma=") and tokens[3].startswith("phase=")):
                raise CircuitSyntaxError("malformed PULSE line", line_no)
            sigma = _parse_float(tokens[2][len("sigma="):], line_no)
            phase = _parse_float(tokens[3][len("phase="):], line_no)
            events.append(PulseEvent(q, Pulse(sigma, phase)))
        elif kind == "GATE2" and len(tokens) == 4:
            q0 = _parse_qubit(tokens[2], 2, line_no)
            q1 = _parse_qubit(tokens[3], 2, line_no)
            events.append(Gate2Event((q0, q1), tokens[1]))
        elif kind == "FRAME" and len(tokens) == 3:
            q = _parse_qubit(tokens[1], 2, line_no)
            if not tokens[2].startswith("z="):
                raise CircuitSyntaxError("malformed FRAME line", line_no)
            events.append(FrameEvent(q, _parse_float(tokens[2][len("z="):], line_no)))
        else:
            raise CircuitSyntaxError(f"unrecognized schedule line {raw!r}", line_no)
    return events


@dataclass(frozen=True)
class _Gate2Info:
    carry: CarryMap | None
    enc_map: tuple[int, int] | None  # (p, q) with frames (t, t) -> (p*t, q*t)


def _classify_gate2s(ir: CircuitIR, mode: PolicyMode) -> dict[int, _Gate2Info]:
    info: dict[int, _Gate2Info] = {}
    for i, op in enumerate(ir.ops):
        if not isinstance(op, Gate2):
            continue
        eff = op.effective_matrix()
        carrier = is_phase_carrier(eff)
        cmap = carry_map(eff) if carrier else None
        if is_enc(eff):
            enc_map: tuple[int, int] | None = (1, 1)
        else:
            gen, enc_map = is_generalized_enc(eff)
            if not gen:
                enc_map = None
        if mode is PolicyMode.VZ_CARRY and not carrier:
            raise IllegalPolicyError(
                f"policy {mode.value!r} needs phase carriers, but {op.name} (op {i}) is not one",
                i,
                op.name,
            )
        if mode is PolicyMode.ENC_MIXED and enc_map is None:
            raise IllegalPolicyError(
                f"policy {mode.value!r} needs excitation-number-conserving gates, "
                f"but {op.name} (op {i}) is not one",
                i,
                op.name,
            )
        info[i] = _Gate2Info(cmap, enc_map)
    return info


def _embed(m: np.ndarray, qubit: int) -> np.ndarray:
    eye = np.eye(2, dtype=complex)
    return np.kron(m, eye) if qubit == 0 else np.kron(eye, m)


def ideal_unitary(ir: CircuitIR) -> np.ndarray:
    """Unitary of the circuit's gates (measurements contribute nothing)."""
    u = np.eye(4, dtype=complex)
    for op in ir.ops:
        if isinstance(op, Gate1):
            u = _embed(op.matrix(), op.qubit) @ u
        elif isinstance(op, Gate2):
            u = op.effective_matrix() @ u
    return u


class _FrameChecker:
    """Debug-mode tracker for the per-qubit frame invariant."""

    def __init__(self, tol: float = 1e-9):
        self.ideal = np.eye(4, dtype=complex)
        self.physical = np.eye(4, dtype=complex)
        self.dropped = [0.0, 0.0]
        self.tol = tol

    def on_pulse(self, qubit: int, pulse: Pulse):
        self.physical = _embed(pulse.unitary(), qubit) @ self.physical

    def on_commit(self, qubit: int, matrix: np.ndarray):
        self.ideal = _embed(matrix, qubit) @ self.ideal

    def on_gate2(self, eff: np.ndarray):
        self.ideal = eff @ self.ideal
        self.physical = eff @ self.physical

    def on_drop(self, qubit: int, angle: float):
        self.dropped[qubit] += angle

    def check(self, frames: list[float]):
        f0 = frames[0] + self.dropped[0]
        f1 = frames[1] + self.dropped[1]
        expected = np.kron(z_rot(f0), z_rot(f1)) @ self.ideal
        dev = phase_distance(self.physical, expected)
        if dev > self.tol:
            raise RuntimeError(f"frame invariant violated (deviation {dev:.3g})")


def compile_circuit(
    ir: CircuitIR,
    policy: CompilePolicy | None = None,
    *,
    check_frames: bool = False,
) -> PulseSchedule:
    """Lower a circuit to a pulse schedule under the given policy.

    * ``three-always``: every 1q gate becomes pulses on its own (special
      cases first when enabled, else three pulses); frames stay zero.
    * ``vz-carry``: 1q gates use the virtual-Z scheme against the pending
      frame; frames are carried through two-qubit gates (all of which must
      be phase carriers) and reported at measurements.
    * ``enc-mixed``: 1q gates are buffered until the next two-qubit gate or
      measurement; at an ENC gate the lower-indexed qubit is compiled with
      virtual-Z and the other with the exact scheme so both frames match
      and commute through the gate.
    * ``auto``: per-gate choice (carry through carriers, ENC handling for
      ENC gates, frames forced to zero before anything else).

    With ``check_frames=True`` the frame invariant is re-verified by
    simulation after every op (slow; for tests).
    """
    policy = policy or CompilePolicy()
    mode = policy.mode
    info = _classify_gate2s(ir, mode)

    events: list[Event] = []
    stats = ScheduleStats(per_qubit=[0] * ir.n_qubits)
    frames = [0.0] * ir.n_qubits
    buffers: list[np.ndarray | None] = [None] * ir.n_qubits
    measured = [False] * ir.n_qubits
    checker = _FrameChecker() if check_frames else None
    lazy = mode in (PolicyMode.ENC_MIXED, PolicyMode.AUTO)

    def emit(qubit: int, compiled: CompiledGate):
        for pulse in compiled.sequence:
            events.append(PulseEvent(qubit, pulse))
            stats.pulses += 1
            stats.per_qubit[qubit] += 1
            if checker:
                checker.on_pulse(qubit, pulse)
        stats.compiled_1q += 1
        stats.elided += compiled.elided
        stats.schemes[compiled.scheme.value] += 1

    def compile_exact(qubit: int, target: np.ndarray):
        """Emit pulses realizing ``target`` exactly (no new frame)."""
        compiled = special_case(target) if policy.special_cases else None
        if compiled is None:
            compiled = three_pulse(params_from_unitary(target)[0])
        emit(qubit, compiled)

    def compile_vz(qubit: int, target: np.ndarray) -> float:
        compiled = virtual_z(params_from_unitary(target)[0])
        emit(qubit, compiled)
        return compiled.residual_z

    def take_buffer(qubit: int) -> np.ndarray | None:
        buffered = buffers[qubit]
        buffers[qubit] = None
        return buffered

    def commit(qubit: int, matrix: np.ndarray):
        if checker:
            checker.on_commit(qubit, matrix)

    def flush_vz(qubit: int):
        """Compile the buffered gate with virtual-Z, folding in the frame."""
        buffered = take_buffer(qubit)
        if buffered is None:
            return
        frames[qubit] = compile_vz(qubit, buffered @ z_rot(-frames[qubit]))
        commit(qubit, buffered)

    def flush_zero(qubit: int):
        """Force the qubit's frame to zero, emitting exact pulses if needed."""
        buffered = take_buffer(qubit)
        if buffered is None and frames[qubit] == 0.0:
            return
        target = (buffered if buffered is not None else np.eye(2, dtype=complex)) @ z_rot(
            -frames[qubit]
        )
        compile_exact(qubit, target)
        if buffered is not None:
            commit(qubit, buffered)
        frames[qubit] = 0.0

    def flush_enc(op: Gate2):
        """Make both frames equal before an ENC gate so they commute through."""
        qa, qb = min(op.qubits), max(op.qubits)
        buffered_a = take_buffer(qa)
        if buffered_a is not None:
            frames[qa] = compile_vz(qa, buffered_a @ z_rot(-frames[qa]))
            commit(qa, buffered_a)
        # else: no pulses needed; the existing frame plays the theta_A role.
        theta_a = frames[qa]
        buffered_b = take_buffer(qb)
        gate_b = buffered_b if buffered_b is not None else np.eye(2, dtype=complex)
        target_b = z_rot(theta_a) @ gate_b @ z_rot(-frames[qb])
        compile_exact(qb, target_b)
        if buffered_b is not None:
            commit(qb, buffered_b)
        frames[qb] = theta_a

    def do_measure(qubit: int):
        if lazy and buffers[qubit] is not None:
            flush_vz(qubit)
        frames[qubit] = normalize_angle(frames[qubit])
        events.append(FrameEvent(qubit, frames[qubit]))
        stats.frames += 1
        if checker:
            checker.on_drop(qubit, frames[qubit])
        frames[qubit] = 0.0
        measured[qubit] = True

    for i, op in enumerate(ir.ops):
        if isinstance(op, Gate1):
            stats.gates_1q += 1
            if mode is PolicyMode.THREE_ALWAYS:
                compile_exact(op.qubit, op.matrix())
                commit(op.qubit, op.matrix())
            elif mode is PolicyMode.VZ_CARRY:
                frames[op.qubit] = compile_vz(
                    op.qubit, op.matrix() @ z_rot(-frames[op.qubit])
                )
                commit(op.qubit, op.matrix())
            else:
                prev = buffers[op.qubit]
                buffers[op.qubit] = op.matrix() @ prev if prev is not None else op.matrix()
        elif isinstance(op, Gate2):
            stats.gates_2q += 1
            gate_info = info[i]
            if mode is PolicyMode.THREE_ALWAYS:
                pass  # frames are identically zero
            elif mode is PolicyMode.VZ_CARRY:
                frames[0], frames[1] = gate_info.carry(frames[0], frames[1])
            elif mode is PolicyMode.ENC_MIXED:
                flush_enc(op)
                p, q = gate_info.enc_map
                frames[0], frames[1] = p * frames[0], q * frames[1]
            else:  # AUTO
                if gate_info.carry is not None:
                    for q in sorted(op.qubits):
                        flush_vz(q)
                    frames[0], frames[1] = gate_info.carry(frames[0], frames[1])
                elif gate_info.enc_map is not None:
                    flush_enc(op)
                    p, q = gate_info.enc_map
                    frames[0], frames[1] = p * frames[0], q * frames[1]
                else:
                    for q in sorted(op.qubits):
                        flush_zero(q)
            frames[0] = normalize_angle(frames[0])
            frames[1] = normalize_angle(frames[1])
            events.append(Gate2Event(op.qubits, op.name))
            if checker:
                checker.on_gate2(op.effective_matrix())
        else:
            do_measure(op.qubit)
        if checker:
            checker.check(frames)

    for q in range(ir.n_qubits):
        if not measured[q]:
            do_measure(q)
    return PulseSchedule(ir.n_qubits, tuple(events), stats)


def simulate_schedule(schedule: PulseSchedule | list[Event], ir: CircuitIR) -> float:
    """Re-simulate a schedule against its circuit; returns the max deviation.

    Pulses become conjugated X rotations, two-qubit events look up their
    matrix in the circuit (by position), and FRAME events are pending
    virtual Z rotations that are corrected for before comparing with the
    ideal unitary up to global phase.
    """
    events = schedule.events if isinstance(schedule, PulseSchedule) else tuple(schedule)
    gate2_ops = ir.gate2_ops()
    u = np.eye(4, dtype=complex)
    corrections = [0.0] * ir.n_qubits
    next_gate2 = 0
    for ev in events:
        if isinstance(ev, PulseEvent):
            u = _embed(ev.pulse.unitary(), ev.qubit) @ u
        elif isinstance(ev, Gate2Event):
            if next_gate2 >= len(gate2_ops):
                raise ScheduleMismatchError("schedule has more GATE2 events than the circuit")
            op = gate2_ops[next_gate2]
            if tuple(ev.qubits) != op.qubits:
                raise ScheduleMismatchError(
                    f"GATE2 event {next_gate2} acts on {ev.qubits}, circuit says {op.qubits}"
                )
            u = op.effective_matrix() @ u
            next_gate2 += 1
        else:
            corrections[ev.qubit] += ev.angle
    if next_gate2 != len(gate2_ops):
        raise ScheduleMismatchError("schedule is missing GATE2 events")
    corrected = np.kron(z_rot(-corrections[0]), z_rot(-corrections[1])) @ u
    return phase_distance(corrected, ideal_unitary(ir))
