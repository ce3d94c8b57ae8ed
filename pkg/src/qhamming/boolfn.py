"""Boolean functions as truth tables, plus the classical brute-force counts.

Input ``x`` is encoded as an integer with ``x0`` as its least significant bit,
so ``table[x]`` is ``f(x)``. The same convention is used for qubit indices in
the simulator, which makes oracle application a table lookup.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .config import MAX_ARITY
from .errors import ExpressionSyntaxError, InputError


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    n: int
    table: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_ARITY:
            raise InputError(f"arity must be in [1, {MAX_ARITY}], got {self.n}")
        table = np.asarray(self.table)
        if table.ndim != 1 or table.size != 1 << self.n:
            raise InputError(f"truth table for n={self.n} needs {1 << self.n} entries, got {table.size}")
        if table.size and not np.isin(table, (0, 1)).all():
            raise InputError("truth table entries must be 0 or 1")
        table = table.astype(np.uint8, copy=True)
        table.flags.writeable = False
        object.__setattr__(self, "table", table)

    @property
    def N(self) -> int:
        return 1 << self.n

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __repr__(self):
        if self.n <= 4:
            bits = "".join(map(str, self.table))
            return f"BooleanFunction(n={self.n}, table={bits})"
        return f"BooleanFunction(n={self.n}, ones={count_ones(self)})"

    def bitstring(self) -> str:
        return "".join("1" if b else "0" for b in self.table)


@dataclass(frozen=True)
class WalshPair:
    """Normalized spectra of the zero set (``f0``) and the one set (``f1``)."""

    f0: np.ndarray
    f1: np.ndarray


def from_truth_table(bits: Sequence[int] | np.ndarray | str, n: int) -> BooleanFunction:
    if isinstance(bits, str):
        if set(bits) - {"0", "1"}:
            raise InputError("truth table string may only contain '0' and '1'")
        bits = [int(c) for c in bits]
    bits = np.asarray(bits)
    if bits.size != 1 << n:
        raise InputError(f"expected {1 << n} bits for n={n}, got {bits.size}")
    return BooleanFunction(n, bits)


def constant(n: int, value: int) -> BooleanFunction:
    return BooleanFunction(n, np.full(1 << n, int(bool(value)), dtype=np.uint8))


def evaluate(f: BooleanFunction, x: int) -> int:
    if not 0 <= x < f.N:
        raise InputError(f"input {x} out of range for n={f.n}")
    return int(f.table[x])


def input_bits(n: int) -> list[np.ndarray]:
    """Column ``i`` is the value of ``x_i`` for every input index."""
    idx = np.arange(1 << n, dtype=np.int64)
    return [((idx >> i) & 1).astype(bool) for i in range(n)]


# -- expression parsing ------------------------------------------------------

_OPERATORS = set("!~&^|()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in _OPERATORS:
            tokens.append((c, c, i))
            i += 1
        elif c in "01" and not (i + 1 < len(text) and text[i + 1].isdigit()):
            tokens.append(("lit", c, i))
            i += 1
        elif c == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ExpressionSyntaxError("expected variable index after 'x'", i + 1, text)
            tokens.append(("var", text[i + 1:j], i))
            i = j
        else:
            raise ExpressionSyntaxError(f"unexpected character {c!r}", i, text)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    # precedence, loosest first: | then ^ then & then unary !/~

    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.tokens = _tokenize(text)
        self.pos = 0
        self.vars = input_bits(n)
        self.N = 1 << n

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> np.ndarray:
        value = self.or_expr()
        kind, _, at = self.peek()
        if kind != "end":
            raise ExpressionSyntaxError(f"unexpected token {self.peek()[1]!r}", at, self.text)
        return value

    def _binary(self, op: str, operand, combine):
        value = operand()
        while self.peek()[0] == op:
            self.take()
            value = combine(value, operand())
        return value

    def or_expr(self):
        return self._binary("|", self.xor_expr, np.logical_or)

    def xor_expr(self):
        return self._binary("^", self.and_expr, np.logical_xor)

    def and_expr(self):
        return self._binary("&", self.unary, np.logical_and)

    def unary(self):
        if self.peek()[0] in ("!", "~"):
            self.take()
            return np.logical_not(self.unary())
        return self.atom()

    def atom(self):
        kind, value, at = self.take()
        if kind == "lit":
            return np.full(self.N, value == "1")
        if kind == "var":
            index = int(value)
            if index >= self.n:
                raise InputError(f"variable x{index} out of range for n={self.n} (position {at})")
            return self.vars[index]
        if kind == "(":
            inner = self.or_expr()
            kind, _, at = self.take()
            if kind != ")":
                raise ExpressionSyntaxError("expected ')'", at, self.text)
            return inner
        what = "end of input" if kind == "end" else repr(value)
        raise ExpressionSyntaxError(f"unexpected {what}", at, self.text)


def parse_expression(text: str, n: int) -> BooleanFunction:
    """Evaluate ``text`` over all ``2**n`` assignments.

    Variables are ``x0 .. x{n-1}``, literals ``0``/``1``. Operators from
    tightest to loosest binding: ``!``/``~``, ``&``, ``^``, ``|``.

    >>> parse_expression("x0 ^ x1", 2).bitstring()
    '0110'
    """
    if not 1 <= n <= MAX_ARITY:
        raise InputError(f"arity must be in [1, {MAX_ARITY}], got {n}")
    table = _Parser(text, n).parse()
    return BooleanFunction(n, np.broadcast_to(table, (1 << n,)).astype(np.uint8))


# -- truth-table files -------------------------------------------------------

def parse_truth_table_text(text: str) -> BooleanFunction:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2 or not lines[0].startswith("n="):
        raise InputError("truth-table file must be 'n=<arity>' followed by one line of bits")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise InputError(f"bad arity line {lines[0]!r}") from None
    if not 1 <= n <= MAX_ARITY:
        raise InputError(f"arity must be in [1, {MAX_ARITY}], got {n}")
    return from_truth_table(lines[1], n)


def load_truth_table(path: str | Path) -> BooleanFunction:
    return parse_truth_table_text(Path(path).read_text())


def format_truth_table(f: BooleanFunction) -> str:
    return f"n={f.n}\n{f.bitstring()}\n"


def save_truth_table(f: BooleanFunction, path: str | Path) -> None:
    Path(path).write_text(format_truth_table(f))


# -- classical counts --------------------------------------------------------

def count_ones(f: BooleanFunction) -> int:
    return int(np.count_nonzero(f.table))


def _check_family(funcs: Sequence[BooleanFunction]) -> int:
    if len(funcs) < 2:
        raise InputError(f"need at least two functions, got {len(funcs)}")
    arities = {f.n for f in funcs}
    if len(arities) != 1:
        raise InputError(f"functions have mismatched arities {sorted(arities)}")
    return funcs[0].n


def classical_joint_ones(funcs: Sequence[BooleanFunction]) -> int:
    """Inputs on which every function outputs 1."""
    _check_family(funcs)
    joint = np.logical_and.reduce([f.table.astype(bool) for f in funcs])
    return int(np.count_nonzero(joint))


def classical_hamming_textbook(funcs: Sequence[BooleanFunction]) -> int:
    """Inputs on which the functions do not all agree."""
    _check_family(funcs)
    tables = np.stack([f.table for f in funcs])
    return int(np.count_nonzero(tables.min(axis=0) != tables.max(axis=0)))


# -- spectra -----------------------------------------------------------------

def fwht(values: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform, natural (Hadamard) ordering.

    ``out[l] = sum_s (-1)**popcount(l & s) * values[s]``.
    """
    out = np.array(values, dtype=np.float64)
    size = out.size
    if size & (size - 1):
        raise InputError("fwht length must be a power of two")
    h = 1
    while h < size:
        view = out.reshape(-1, 2, h)
        a = view[:, 0, :].copy()
        b = view[:, 1, :]
        view[:, 0, :] += b
        view[:, 1, :] = a - b
        h *= 2
    return out


def walsh_coefficients(f: BooleanFunction) -> WalshPair:
    ones = f.table.astype(np.float64)
    N = f.N
    return WalshPair(f0=fwht(1.0 - ones) / N, f1=fwht(ones) / N)


def random_function(n: int, seed: int) -> BooleanFunction:
    rng = np.random.default_rng(seed)
    return BooleanFunction(n, rng.integers(0, 2, size=1 << n, dtype=np.uint8))


def pointwise_xor(f: BooleanFunction, g: BooleanFunction) -> BooleanFunction:
    if f.n != g.n:
        raise InputError("arity mismatch")
    return BooleanFunction(f.n, f.table ^ g.table)


def all_functions(n: int):
    """Every n-input function, in order of the integer spelled by its table."""
    N = 1 << n
    for code in range(1 << N):
        bits = (code >> np.arange(N)) & 1
        yield BooleanFunction(n, bits.astype(np.uint8))
