import json
from math import sqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhamming.analysis import (
    JSON_KEYS,
    Case,
    Category,
    ConcurrenceReading,
    HammingReport,
    categorize_from_concurrence,
    compare_with_classical,
    concurrence_from_count,
    decide_hamming,
    reading_from_counts,
    solve_mc,
)
from qhamming.boolfn import constant, parse_expression
from qhamming.errors import InconsistencyError, InputError, ProtocolError


class TestSolveMc:
    def test_zero(self):
        assert solve_mc(0.0, 0.0, 4) == 0

    def test_half(self):
        assert solve_mc(1.0, 0.5, 8) == 4

    def test_smaller_root(self):
        assert solve_mc(sqrt(3) / 2, 0.25, 4) == 1

    def test_larger_root(self):
        assert solve_mc(sqrt(3) / 2, 0.75, 4) == 3

    def test_full(self):
        assert solve_mc(0.0, 1.0, 4) == 4

    def test_non_integer_root(self):
        # roots 2 +- sqrt(3)
        with pytest.raises(InconsistencyError):
            solve_mc(0.5, 0.1, 4)

    def test_out_of_range(self):
        with pytest.raises(InputError):
            solve_mc(1.5, 0.5, 4)

    @pytest.mark.parametrize("N", [2, 4, 8, 16])
    def test_inverts_forward_map(self, N):
        for M in range(N + 1):
            assert solve_mc(concurrence_from_count(M, N), M / N, N) == M

    @given(st.integers(1, 24).flatmap(lambda n: st.tuples(st.just(1 << n), st.integers(0, 1 << n))))
    def test_inverts_forward_map_large(self, case):
        N, M = case
        assert solve_mc(concurrence_from_count(M, N), M / N, N) == M


class TestDecide:
    def test_entangled(self):
        r = decide_hamming(ConcurrenceReading(C=sqrt(3) / 2, p1=0.25), None, 4)
        assert (r.H, r.M_c, r.case) == (3, 1, Case.ENTANGLED)

    def test_delta_zero(self):
        r = decide_hamming(ConcurrenceReading(C=0.0, p1=0.0), 0, 8)
        assert (r.H, r.M_c, r.case) == (8, 0, Case.ALL_DISAGREE)

    def test_delta_one(self):
        r = decide_hamming(ConcurrenceReading(C=0.0, p1=1.0), 1, 8)
        assert (r.H, r.M_c, r.case) == (0, 8, Case.ALL_AGREE)

    def test_missing_delta(self):
        with pytest.raises(ProtocolError):
            decide_hamming(ConcurrenceReading(C=0.0, p1=0.0), None, 4)

    def test_bad_delta(self):
        with pytest.raises(InputError):
            decide_hamming(ConcurrenceReading(C=0.0, p1=0.0), 2, 4)

    def test_tiny_nonzero_concurrence_is_inconsistent(self):
        with pytest.raises(InconsistencyError):
            decide_hamming(ConcurrenceReading(C=1e-6, p1=0.0), None, 4)

    @given(st.integers(1, 10).flatmap(lambda n: st.tuples(st.just(1 << n), st.integers(0, 1 << n))))
    def test_case_invariants(self, case):
        N, M = case
        reading = ConcurrenceReading(C=concurrence_from_count(M, N), p1=M / N)
        delta = None if 0 < M < N else int(M == N)
        r = decide_hamming(reading, delta, N)
        assert 0 <= r.H <= N and r.H == N - r.M_c == N - M
        assert (r.H == 0) == (r.C == 0 and r.delta == 1)
        assert (r.H == N) == (r.C == 0 and r.delta == 0)
        if r.C > 0:
            assert r.M_c >= 1

    def test_sampled_threshold(self):
        # one hit out of 10^4 is within noise of zero
        reading = reading_from_counts(1, 10_000)
        assert reading.mode == "sampled"
        assert not reading.is_entangled
        assert reading_from_counts(2500, 10_000).is_entangled


class TestCategorize:
    def test_constant(self):
        assert categorize_from_concurrence(0.0) == Category.CONSTANT

    def test_balanced(self):
        assert categorize_from_concurrence(1.0) == Category.BALANCED

    def test_other(self):
        assert categorize_from_concurrence(sqrt(3) / 2) == Category.OTHER

    def test_half_is_not_balanced(self):
        assert categorize_from_concurrence(0.5) == Category.OTHER

    @pytest.mark.parametrize("n", range(1, 5))
    def test_formula_values(self, n):
        N = 1 << n
        for M in range(N + 1):
            cat = categorize_from_concurrence(concurrence_from_count(M, N))
            if M in (0, N):
                assert cat == Category.CONSTANT
            elif 2 * M == N:
                assert cat == Category.BALANCED
            else:
                assert cat == Category.OTHER


class TestCompare:
    def _run(self, funcs, M_c, N):
        reading = ConcurrenceReading(C=concurrence_from_count(M_c, N), p1=M_c / N)
        delta = None if 0 < M_c < N else int(M_c == N)
        return compare_with_classical(funcs, decide_hamming(reading, delta, N))

    def test_zero_functions_warn(self):
        r = self._run([constant(2, 0)] * 2, 0, 4)
        assert (r.H, r.classical_textbook) == (4, 0)
        assert r.matches_joint_count and len(r.warnings) == 1

    def test_and_or_warn(self):
        f, g = parse_expression("x0 & x1", 2), parse_expression("x0 | x1", 2)
        r = self._run([f, g], 1, 4)
        assert (r.H, r.classical_textbook, r.classical_joint) == (3, 2, 1)
        assert len(r.warnings) == 1 and "2 inputs" in r.warnings[0]

    def test_ones_agree(self):
        r = self._run([constant(2, 1)] * 2, 4, 4)
        assert r.H == 0 == r.classical_textbook
        assert r.warnings == []

    def test_mismatch_flagged(self):
        f, g = parse_expression("x0 & x1", 2), parse_expression("x0 | x1", 2)
        r = self._run([f, g], 2, 4)
        assert r.matches_joint_count is False
        assert any("brute force" in w for w in r.warnings)

    def test_uncompared(self):
        r = decide_hamming(ConcurrenceReading(C=1.0, p1=0.5), None, 4)
        assert r.matches_joint_count is None


reports = st.builds(
    HammingReport,
    H=st.integers(0, 64),
    M_c=st.integers(0, 64),
    C=st.floats(0, 1),
    p1=st.floats(0, 1),
    delta=st.one_of(st.none(), st.integers(0, 1)),
    case=st.sampled_from(Case),
    N=st.sampled_from([2, 4, 8, 16, 32, 64]),
    kappa=st.integers(2, 6),
    mode=st.sampled_from(["exact", "sampled"]),
    shots=st.integers(0, 10**6),
    classical_joint=st.one_of(st.none(), st.integers(0, 64)),
    classical_textbook=st.one_of(st.none(), st.integers(0, 64)),
    warnings=st.lists(st.text()),
)


@given(reports)
def test_json_roundtrip(report):
    d = json.loads(json.dumps(report.to_dict()))
    assert tuple(d) == JSON_KEYS
    assert HammingReport.from_dict(d) == report


def test_from_dict_rejects_missing_keys():
    with pytest.raises(InputError):
        HammingReport.from_dict({"H": 1})
