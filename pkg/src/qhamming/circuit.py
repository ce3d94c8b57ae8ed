"""Composite oracle U_kappa, the concurrence operator, and the two pipelines.

Register layout for kappa functions of n inputs (``CircuitLayout``)::

    0 .. n-1          inputs x_0 .. x_{n-1}
    n .. n+kappa-1    one output qubit per function, f_j -> n+j
    n+kappa           AND target (chi = f_0 & ... & f_{kappa-1})
    n+kappa+1         concurrence ancilla, prepared in |1>
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .analysis import (
    EXACT,
    SAMPLED,
    Category,
    ConcurrenceReading,
    HammingReport,
    categorize_from_concurrence,
    compare_with_classical,
    decide_hamming,
    reading_from_counts,
)
from .boolfn import BooleanFunction
from .config import DEFAULT_SEED, DEFAULT_SHOTS, EQUALITY_TOL, MAX_INSPECT_ARITY
from .errors import InputError, PreconditionError, ResourceError
from .simulator import (
    StateVector,
    apply_cnot,
    apply_hadamard_range,
    apply_mct,
    apply_oracle,
    apply_x,
    concurrence_vs_rest,
    probability_one,
    sample,
    zero_state,
)


@dataclass(frozen=True)
class CircuitLayout:
    n: int
    kappa: int

    @property
    def input_qubits(self) -> range:
        return range(self.n)

    @property
    def output_qubits(self) -> range:
        return range(self.n, self.n + self.kappa)

    @property
    def and_target(self) -> int:
        return self.n + self.kappa

    @property
    def conc_ancilla(self) -> int:
        return self.n + self.kappa + 1

    @property
    def total_qubits(self) -> int:
        return self.n + self.kappa + 2

    @property
    def N(self) -> int:
        return 1 << self.n


# -- gates -------------------------------------------------------------------

class GateLog:
    """Audit trail, one ``<index> <gate-name> <qubits>`` line per gate.

    Controlled gates list their target last. ``passes`` holds the line index at
    which each state preparation began.
    """

    def __init__(self):
        self.lines: list[str] = []
        self.passes: list[int] = []

    def begin_pass(self) -> None:
        self.passes.append(len(self.lines))

    def record(self, name: str, qubits: Sequence[int]) -> None:
        self.lines.append(f"{len(self.lines)} {name} {','.join(map(str, qubits))}")

    def export(self) -> str:
        return "\n".join(self.lines) + ("\n" if self.lines else "")

    def count(self, name: str, start: int = 0, stop: int | None = None) -> int:
        return sum(1 for line in self.lines[start:stop] if line.split()[1] == name)

    def pass_slices(self) -> list[slice]:
        bounds = self.passes + [len(self.lines)]
        return [slice(a, b) for a, b in zip(bounds, bounds[1:])]


@dataclass(frozen=True)
class Hadamard:
    qubits: tuple[int, ...]
    name = "h"

    def apply(self, state: StateVector) -> StateVector:
        return apply_hadamard_range(state, self.qubits)

    def wires(self) -> tuple[int, ...]:
        return self.qubits


@dataclass(frozen=True)
class X:
    qubit: int
    name = "x"

    def apply(self, state):
        return apply_x(state, self.qubit)

    def wires(self):
        return (self.qubit,)


@dataclass(frozen=True)
class CNOT:
    control: int
    target: int
    name = "cx"

    def apply(self, state):
        return apply_cnot(state, self.control, self.target)

    def wires(self):
        return (self.control, self.target)


@dataclass(frozen=True)
class MCT:
    controls: tuple[int, ...]
    target: int
    name = "mct"

    def apply(self, state):
        return apply_mct(state, self.controls, self.target)

    def wires(self):
        return (*self.controls, self.target)


@dataclass(frozen=True)
class Oracle:
    func: BooleanFunction = field(repr=False)
    label: str
    controls: tuple[int, ...]
    target: int

    @property
    def name(self) -> str:
        return self.label

    def apply(self, state):
        return apply_oracle(state, self.func, self.controls, self.target)

    def wires(self):
        return (*self.controls, self.target)


Gate = Hadamard | X | CNOT | MCT | Oracle
GateSequence = list


def run_gates(state: StateVector, gates: Sequence[Gate], log: GateLog | None = None) -> StateVector:
    for gate in gates:
        gate.apply(state)
        if log is not None:
            log.record(gate.name, gate.wires())
    return state


def _layout_for(funcs: Sequence[BooleanFunction]) -> CircuitLayout:
    if len(funcs) < 2:
        raise InputError(f"U_kappa needs at least two functions, got {len(funcs)}")
    arities = {f.n for f in funcs}
    if len(arities) != 1:
        raise InputError(f"functions have mismatched arities {sorted(arities)}")
    return CircuitLayout(funcs[0].n, len(funcs))


def build_u_kappa(funcs: Sequence[BooleanFunction]) -> GateSequence:
    """One oracle per function onto its output qubit, then a kappa-control Toffoli."""
    layout = _layout_for(funcs)
    inputs = tuple(layout.input_qubits)
    gates: GateSequence = [
        Oracle(f, f"U{j}", inputs, target)
        for j, (f, target) in enumerate(zip(funcs, layout.output_qubits))
    ]
    gates.append(MCT(tuple(layout.output_qubits), layout.and_target))
    return gates


# -- stage introspection -----------------------------------------------------

_STAGE = re.compile(r"^(?:phi|φ)(\d+)$")


def stage_names(kappa: int) -> list[str]:
    """phi0 zero state, phi1 after Hadamards, phi(j+2) after U_j, last after the Toffoli."""
    return [f"phi{i}" for i in range(kappa + 3)]


def state_after_stage(funcs: Sequence[BooleanFunction], stage: str | int) -> StateVector:
    """Statevector on n+kappa+1 qubits (no concurrence ancilla) after ``stage``."""
    layout = _layout_for(funcs)
    if layout.n > MAX_INSPECT_ARITY:
        raise ResourceError(f"stage introspection is limited to n <= {MAX_INSPECT_ARITY}")
    if isinstance(stage, str):
        m = _STAGE.match(stage.strip())
        if not m:
            raise InputError(f"unknown stage {stage!r}")
        stage = int(m.group(1))
    if not 0 <= stage < layout.kappa + 3:
        raise InputError(f"unknown stage phi{stage}; valid: {', '.join(stage_names(layout.kappa))}")
    state = zero_state(layout.n + layout.kappa + 1)
    if stage == 0:
        return state
    steps = [Hadamard(tuple(layout.input_qubits))] + build_u_kappa(funcs)
    return run_gates(state, steps[:stage])


# -- concurrence operator ----------------------------------------------------

def apply_u_lambda(
    state: StateVector,
    marked_qubit: int,
    ancilla_qubit: int,
    mode: str = EXACT,
    shots: int = DEFAULT_SHOTS,
    seed: int | None = DEFAULT_SEED,
    log: GateLog | None = None,
) -> tuple[StateVector, ConcurrenceReading]:
    """CNOT the marked qubit onto a |1> ancilla, then read the ancilla's concurrence."""
    if abs(probability_one(state, ancilla_qubit) - 1.0) > EQUALITY_TOL:
        raise PreconditionError(f"ancilla qubit {ancilla_qubit} is not in |1>")
    run_gates(state, [CNOT(marked_qubit, ancilla_qubit)], log)
    if mode == EXACT:
        reading = ConcurrenceReading(
            C=concurrence_vs_rest(state, ancilla_qubit),
            p1=probability_one(state, marked_qubit),
        )
    elif mode == SAMPLED:
        counts = sample(state, [marked_qubit, ancilla_qubit], shots, seed)
        ones = sum(c for outcome, c in counts.items() if outcome & 1)
        reading = reading_from_counts(ones, shots)
    else:
        raise InputError(f"unknown mode {mode!r}")
    return state, reading


# -- pipelines ---------------------------------------------------------------

def prepare_register(
    funcs: Sequence[BooleanFunction],
    log: GateLog | None = None,
) -> tuple[CircuitLayout, StateVector]:
    """|0...0>|1>, Hadamards on the inputs, then U_kappa. Counts as one pass."""
    layout = _layout_for(funcs)
    state = zero_state(layout.total_qubits)
    if log is not None:
        log.begin_pass()
    gates = [X(layout.conc_ancilla), Hadamard(tuple(layout.input_qubits))] + build_u_kappa(funcs)
    return layout, run_gates(state, gates, log)


def _measure_delta(state, qubit, mode, shots, seed) -> int:
    if mode == SAMPLED:
        counts = sample(state, [qubit], shots, seed)
        return int(counts.get(1, 0) * 2 > shots)
    return int(probability_one(state, qubit) > 0.5)


def run_proposed_algorithm(
    funcs: Sequence[BooleanFunction],
    mode: str = EXACT,
    shots: int = DEFAULT_SHOTS,
    seed: int | None = DEFAULT_SEED,
    compare_classical: bool = True,
    log: GateLog | None = None,
) -> HammingReport:
    """Distance ``N - M_c`` from one concurrence reading, re-running once if it is zero."""
    if mode not in (EXACT, SAMPLED):
        raise InputError(f"unknown mode {mode!r}")
    if mode == SAMPLED and shots < 1:
        raise InputError("sampled mode needs shots >= 1")
    layout, state = prepare_register(funcs, log)
    _, reading = apply_u_lambda(
        state, layout.and_target, layout.conc_ancilla, mode, shots, seed, log
    )
    delta = None
    if not reading.is_entangled:
        del state
        _, state = prepare_register(funcs, log)
        delta_seed = None if seed is None else seed + 1
        delta = _measure_delta(state, layout.and_target, mode, shots, delta_seed)
    report = decide_hamming(reading, delta, layout.N)
    report.kappa = layout.kappa
    if compare_classical:
        report = compare_with_classical(funcs, report)
    return report


def prepare_categorization(f: BooleanFunction, log: GateLog | None = None) -> StateVector:
    """|0>^n |0> |1>, Hadamards, U_f onto qubit n, Hadamards again."""
    state = zero_state(f.n + 2)
    inputs = tuple(range(f.n))
    if log is not None:
        log.begin_pass()
    gates = [X(f.n + 1), Hadamard(inputs), Oracle(f, "U0", inputs, f.n), Hadamard(inputs)]
    return run_gates(state, gates, log)


def run_categorization(
    f: BooleanFunction,
    mode: str = EXACT,
    shots: int = DEFAULT_SHOTS,
    seed: int | None = DEFAULT_SEED,
    log: GateLog | None = None,
) -> tuple[Category, ConcurrenceReading]:
    state = prepare_categorization(f, log)
    _, reading = apply_u_lambda(state, f.n, f.n + 1, mode, shots, seed, log)
    return categorize_from_concurrence(reading.C, reading.threshold), reading
