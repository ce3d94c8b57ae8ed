"""Turning concurrence readings into solution counts, distances and categories.

For a register whose marked qubit reads 1 with probability ``p = M / N`` the
concurrence of the ancilla against the rest is ``C = 2 sqrt(M (N - M)) / N``.
Both ``M`` and ``N - M`` give the same ``C``; ``p1`` from the same state picks
the right one.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from math import sqrt
from typing import Sequence

from .boolfn import BooleanFunction, classical_hamming_textbook, classical_joint_ones
from .config import EXACT_ROOT_TOL, NONZERO_TOL, SIGMA_MULTIPLIER
from .errors import InconsistencyError, InputError, ProtocolError

log = logging.getLogger(__name__)

EXACT = "exact"
SAMPLED = "sampled"

# Concurrence of a balanced function (M = N/2) under C = 2 sqrt(M(N-M))/N.
# The value 1/2 is sometimes quoted for this case; it does not satisfy the
# formula and is not used here.
C_BALANCED = 1.0


class Case(str, Enum):
    ENTANGLED = "entangled"
    ALL_DISAGREE = "all_disagree"
    ALL_AGREE = "all_agree"


class Category(str, Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"
    OTHER = "other"


@dataclass(frozen=True)
class ConcurrenceReading:
    C: float
    p1: float
    mode: str = EXACT
    shots: int = 0
    stderr: float = 0.0

    @property
    def threshold(self) -> float:
        """Smallest C counted as nonzero for this reading."""
        if self.mode == SAMPLED:
            return max(NONZERO_TOL, SIGMA_MULTIPLIER * self.stderr)
        return NONZERO_TOL

    @property
    def is_entangled(self) -> bool:
        return self.C > self.threshold

    def count_tolerance(self, N: int) -> float:
        """Allowed gap between the unrounded and rounded solution count."""
        exact = EXACT_ROOT_TOL * N
        if self.mode == SAMPLED and self.shots:
            p = min(max(self.p1, 0.0), 1.0)
            return max(exact, SIGMA_MULTIPLIER * N * sqrt(p * (1.0 - p) / self.shots))
        return exact


def concurrence_from_count(M: int, N: int) -> float:
    if not 0 <= M <= N:
        raise InputError(f"count {M} outside [0, {N}]")
    return 2.0 * sqrt(M * (N - M)) / N


def reading_from_counts(ones: int, shots: int) -> ConcurrenceReading:
    """Shot estimate of C from how often the marked qubit read 1.

    The standard error is the delta-method propagation of the binomial error
    on p, ``|1 - 2p| / sqrt(shots)``.
    """
    if shots < 1:
        raise InputError("shots must be >= 1")
    p = ones / shots
    C = 2.0 * sqrt(p * (1.0 - p))
    stderr = abs(1.0 - 2.0 * p) / sqrt(shots)
    return ConcurrenceReading(C=C, p1=p, mode=SAMPLED, shots=shots, stderr=stderr)


def solve_mc(C: float, p1: float, N: int, tol: float | None = None) -> int:
    """Invert ``C = 2 sqrt(M (N - M)) / N`` for the integer ``M``.

    The roots are ``N (1 +- sqrt(1 - C**2)) / 2``; ``p1 >= 1/2`` selects the
    larger one. Raises InconsistencyError when the chosen root is further than
    ``tol`` (default ``1e-6 * N``) from an integer.
    """
    if not -NONZERO_TOL <= C <= 1.0 + NONZERO_TOL:
        raise InputError(f"concurrence {C} outside [0, 1]")
    C = min(max(C, 0.0), 1.0)
    disc = sqrt(max(0.0, 1.0 - C * C))
    raw = N * (1.0 + disc) / 2.0 if p1 >= 0.5 else N * (1.0 - disc) / 2.0
    M = min(max(int(round(raw)), 0), N)
    if tol is None:
        tol = EXACT_ROOT_TOL * N
    if abs(M - raw) > tol:
        raise InconsistencyError(
            f"C={C:.12g} gives non-integer count {raw:.9g} (tolerance {tol:.3g}) for N={N}"
        )
    return M


@dataclass
class HammingReport:
    H: int
    M_c: int
    C: float
    p1: float
    delta: int | None
    case: Case
    N: int
    kappa: int | None = None
    mode: str = EXACT
    shots: int = 0
    classical_joint: int | None = None
    classical_textbook: int | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.N.bit_length() - 1

    @property
    def matches_joint_count(self) -> bool | None:
        """Whether ``H == N - classical_joint``; None until compared."""
        if self.classical_joint is None:
            return None
        return self.H == self.N - self.classical_joint

    def to_dict(self) -> dict:
        d = asdict(self)
        d["case"] = self.case.value
        return {key: (self.n if key == "n" else d[key]) for key in JSON_KEYS}

    @classmethod
    def from_dict(cls, d: dict) -> HammingReport:
        missing = set(JSON_KEYS) - set(d)
        if missing:
            raise InputError(f"report is missing keys {sorted(missing)}")
        kwargs = {k: d[k] for k in JSON_KEYS if k != "n"}
        kwargs["case"] = Case(kwargs["case"])
        kwargs["warnings"] = list(kwargs["warnings"])
        report = cls(**kwargs)
        if report.n != d["n"]:
            raise InputError(f"n={d['n']} is inconsistent with N={d['N']}")
        return report


JSON_KEYS = (
    "n", "N", "kappa", "H", "M_c", "C", "p1", "delta", "case",
    "mode", "shots", "classical_joint", "classical_textbook", "warnings",
)


def decide_hamming(reading: ConcurrenceReading, delta: int | None, N: int) -> HammingReport:
    if reading.is_entangled:
        M_c = solve_mc(reading.C, reading.p1, N, tol=reading.count_tolerance(N))
        if M_c in (0, N):
            raise InconsistencyError(f"nonzero concurrence C={reading.C:.6g} but M_c={M_c}")
        return HammingReport(
            H=N - M_c, M_c=M_c, C=reading.C, p1=reading.p1, delta=delta,
            case=Case.ENTANGLED, N=N, mode=reading.mode, shots=reading.shots,
        )
    if delta is None:
        raise ProtocolError("concurrence is zero; the AND-target bit must be measured to decide")
    if delta not in (0, 1):
        raise InputError(f"delta must be 0 or 1, got {delta!r}")
    # delta=0: no input satisfies every function; delta=1: all of them do
    M_c = 0 if delta == 0 else N
    return HammingReport(
        H=N - M_c, M_c=M_c, C=reading.C, p1=reading.p1, delta=delta,
        case=Case.ALL_DISAGREE if delta == 0 else Case.ALL_AGREE,
        N=N, mode=reading.mode, shots=reading.shots,
    )


def categorize_from_concurrence(C: float, threshold: float = NONZERO_TOL) -> Category:
    if C <= threshold:
        return Category.CONSTANT
    if abs(C - C_BALANCED) <= threshold:
        return Category.BALANCED
    return Category.OTHER


def compare_with_classical(funcs: Sequence[BooleanFunction], report: HammingReport) -> HammingReport:
    joint = classical_joint_ones(funcs)
    textbook = classical_hamming_textbook(funcs)
    out = replace(report, classical_joint=joint, classical_textbook=textbook,
                  warnings=list(report.warnings))
    if not out.matches_joint_count:
        out.warnings.append(
            f"H={out.H} does not equal N - M_c={out.N - joint} from brute force"
        )
    if out.H != textbook:
        out.warnings.append(
            f"H={out.H} counts inputs not accepted by every function; "
            f"the functions disagree on {textbook} inputs"
        )
    for message in out.warnings:
        log.debug(message)
    return out
