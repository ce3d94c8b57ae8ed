"""Exact statevector simulation on numpy arrays.

Qubit ``k`` is bit ``k`` of the basis index. Gates mutate the state in place
and return it, so calls can be chained. Every permutation gate (X, CNOT, MCT,
oracle) is done by slicing a ``(2,) * q`` tensor view of the amplitudes rather
than building matrices; one pass costs O(2**q).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import sqrt
from typing import Sequence

import numpy as np

from .boolfn import BooleanFunction
from .config import MAX_QUBITS
from .errors import InputError, ResourceError

_INV_SQRT2 = 1.0 / sqrt(2.0)


@dataclass(eq=False)
class StateVector:
    num_qubits: int
    amps: np.ndarray

    def __post_init__(self):
        if self.amps.shape != (1 << self.num_qubits,):
            raise InputError(f"need {1 << self.num_qubits} amplitudes, got shape {self.amps.shape}")

    def copy(self) -> StateVector:
        return StateVector(self.num_qubits, self.amps.copy())

    def norm(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def tensor(self) -> np.ndarray:
        # axis 0 is the most significant qubit
        return self.amps.reshape((2,) * self.num_qubits)

    def axis(self, qubit: int) -> int:
        return self.num_qubits - 1 - qubit

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


@dataclass(frozen=True)
class SingleQubitDensity:
    rho: np.ndarray

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.rho).real)

    def trace(self) -> float:
        return float(np.trace(self.rho).real)


def zero_state(q: int) -> StateVector:
    if q < 1:
        raise InputError("need at least one qubit")
    if q > MAX_QUBITS:
        raise ResourceError(f"{q} qubits exceeds the cap of {MAX_QUBITS}")
    amps = np.zeros(1 << q, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(q, amps)


def from_amplitudes(amps: Sequence[complex] | np.ndarray) -> StateVector:
    amps = np.asarray(amps, dtype=np.complex128).copy()
    q = amps.size.bit_length() - 1
    if q < 1 or amps.size != 1 << q:
        raise InputError("amplitude count must be a power of two >= 2")
    if q > MAX_QUBITS:
        raise ResourceError(f"{q} qubits exceeds the cap of {MAX_QUBITS}")
    return StateVector(q, amps)


def basis_state(q: int, index: int) -> StateVector:
    state = zero_state(q)
    state.amps[0] = 0.0
    state.amps[index] = 1.0
    return state


def _check_qubits(state: StateVector, *qubits: int) -> None:
    for k in qubits:
        if not 0 <= k < state.num_qubits:
            raise InputError(f"qubit {k} out of range for a {state.num_qubits}-qubit register")
    if len(set(qubits)) != len(qubits):
        raise InputError(f"qubit indices must be distinct, got {list(qubits)}")


def _flip_where(state: StateVector, conditions: dict[int, int], target: int) -> StateVector:
    """Swap the target's 0/1 slices on the subspace fixed by ``conditions``."""
    view = state.tensor()
    index = [slice(None)] * state.num_qubits
    for k, bit in conditions.items():
        index[state.axis(k)] = bit
    lo, hi = list(index), list(index)
    lo[state.axis(target)] = 0
    hi[state.axis(target)] = 1
    lo, hi = tuple(lo), tuple(hi)
    tmp = view[lo].copy()
    view[lo] = view[hi]
    view[hi] = tmp
    return state


def apply_x(state: StateVector, qubit: int) -> StateVector:
    _check_qubits(state, qubit)
    return _flip_where(state, {}, qubit)


def apply_cnot(state: StateVector, control: int, target: int) -> StateVector:
    _check_qubits(state, control, target)
    return _flip_where(state, {control: 1}, target)


def apply_mct(state: StateVector, controls: Sequence[int], target: int) -> StateVector:
    """Multi-controlled X: flip ``target`` where every control bit is 1."""
    controls = list(controls)
    if not controls:
        raise InputError("multi-controlled gate needs at least one control")
    _check_qubits(state, *controls, target)
    return _flip_where(state, {c: 1 for c in controls}, target)


def apply_hadamard(state: StateVector, qubit: int) -> StateVector:
    _check_qubits(state, qubit)
    view = state.amps.reshape(-1, 2, 1 << qubit)
    a = view[:, 0, :].copy()
    b = view[:, 1, :]
    view[:, 0, :] = (a + b) * _INV_SQRT2
    view[:, 1, :] = (a - b) * _INV_SQRT2
    return state


def apply_hadamard_range(state: StateVector, qubits: Sequence[int]) -> StateVector:
    qubits = list(qubits)
    _check_qubits(state, *qubits)
    for k in qubits:
        apply_hadamard(state, k)
    return state


def apply_oracle(
    state: StateVector,
    f: BooleanFunction,
    controls: Sequence[int],
    target: int,
) -> StateVector:
    """|x, b> -> |x, b XOR f(x)> with x read from ``controls`` (controls[i] = x_i)."""
    controls = list(controls)
    if len(controls) != f.n:
        raise InputError(f"function has arity {f.n} but {len(controls)} control qubits were given")
    if target in controls:
        raise InputError(f"oracle target {target} overlaps its controls")
    _check_qubits(state, *controls, target)
    if controls == list(range(f.n)):
        # inputs are the low bits: rows of the (rest, N) view share one x
        view = state.amps.reshape(-1, 2, 1 << (target - f.n), f.N)
        mask = f.table.astype(bool)
        tmp = view[:, 0, :, mask].copy()
        view[:, 0, :, mask] = view[:, 1, :, mask]
        view[:, 1, :, mask] = tmp
        return state
    idx = np.arange(1 << state.num_qubits, dtype=np.int64)
    x = np.zeros_like(idx)
    for i, c in enumerate(controls):
        x |= ((idx >> c) & 1) << i
    lo = idx[(f.table[x] == 1) & (((idx >> target) & 1) == 0)]
    hi = lo | (1 << target)
    state.amps[lo], state.amps[hi] = state.amps[hi], state.amps[lo].copy()
    return state


def probability_one(state: StateVector, qubit: int) -> float:
    _check_qubits(state, qubit)
    view = state.amps.reshape(-1, 2, 1 << qubit)
    return float(np.sum(np.abs(view[:, 1, :]) ** 2))


def reduced_density(state: StateVector, qubit: int) -> SingleQubitDensity:
    _check_qubits(state, qubit)
    view = state.amps.reshape(-1, 2, 1 << qubit)
    a0 = view[:, 0, :]
    a1 = view[:, 1, :]
    r00 = np.vdot(a0, a0).real
    r11 = np.vdot(a1, a1).real
    r01 = np.vdot(a1, a0)  # sum a0 * conj(a1)
    rho = np.array([[r00, r01], [np.conj(r01), r11]], dtype=np.complex128)
    return SingleQubitDensity(rho)


def concurrence_vs_rest(state: StateVector, qubit: int) -> float:
    """Pure-state concurrence of one qubit against the rest: 2 sqrt(det rho)."""
    rho = reduced_density(state, qubit).rho
    det = (rho[0, 0] * rho[1, 1] - rho[0, 1] * rho[1, 0]).real
    return float(2.0 * sqrt(max(0.0, det)))


def marginal(state: StateVector, qubits: Sequence[int]) -> np.ndarray:
    """Joint distribution of ``qubits``; outcome bit i belongs to qubits[i]."""
    qubits = list(qubits)
    _check_qubits(state, *qubits)
    probs = state.probabilities().reshape((2,) * state.num_qubits)
    keep = [state.axis(k) for k in qubits]
    others = tuple(a for a in range(state.num_qubits) if a not in keep)
    summed = probs.sum(axis=others)
    # remaining axes are in ascending original-axis order; put qubits[-1] first
    # so that the flattened index has qubits[0] as its least significant bit
    order = sorted(keep)
    perm = [order.index(a) for a in reversed(keep)]
    return np.transpose(summed, perm).reshape(-1)


def sample(
    state: StateVector,
    qubits: Sequence[int],
    shots: int,
    seed: int | None = None,
) -> Counter:
    """Draw ``shots`` measurements of ``qubits`` without collapsing the state.

    Keys are integers whose bit i is the outcome of ``qubits[i]``.
    """
    if shots < 1:
        raise InputError("shots must be >= 1")
    p = marginal(state, qubits)
    p = np.clip(p, 0.0, None)
    p = p / p.sum()
    counts = np.random.default_rng(seed).multinomial(shots, p)
    return Counter({int(k): int(c) for k, c in enumerate(counts) if c})
