import csv
import io
import json
import subprocess
import sys

import pytest

from qhamming.analysis import JSON_KEYS, HammingReport
from qhamming.boolfn import parse_expression, save_truth_table
from qhamming.cli import EXIT_INCONSISTENT, EXIT_INPUT, EXIT_OK, load_function, main


def run(*argv):
    out = io.StringIO()
    try:
        code = main(list(argv), out=out)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    return code, out.getvalue()


class TestHamming:
    def test_and_or_json(self):
        code, text = run("hamming", "--n", "2", "expr:x0&x1", "expr:x0|x1", "--output", "json")
        assert code == EXIT_OK
        d = json.loads(text)
        assert tuple(d) == JSON_KEYS
        assert (d["H"], d["M_c"], d["classical_textbook"]) == (3, 1, 2)
        assert abs(d["C"] - 0.8660254037844386) <= 1e-9
        assert len(d["warnings"]) == 1

    def test_zeros(self):
        code, text = run("hamming", "--n", "2", "expr:0", "expr:0", "--output", "json")
        d = json.loads(text)
        assert code == 0 and (d["H"], d["delta"], d["case"]) == (4, 0, "all_disagree")

    def test_single_spec(self):
        code, text = run("hamming", "--n", "2", "expr:x0")
        assert code == EXIT_INPUT and text == ""

    def test_missing_arity(self):
        assert run("hamming", "expr:x0", "expr:x1")[0] == EXIT_INPUT

    def test_syntax_error(self):
        code, text = run("hamming", "--n", "2", "expr:x0&", "expr:x1", "--output", "json")
        assert code == EXIT_INPUT and text == ""

    def test_text_output(self):
        code, text = run("hamming", "--n", "2", "expr:x0&x1", "expr:x0|x1")
        assert code == 0
        assert "H=3" in text and "warning:" in text

    def test_sampled(self):
        code, text = run("hamming", "--n", "2", "expr:x0&x1", "expr:x0|x1",
                         "--mode", "sampled", "--shots", "20000", "--seed", "3", "--output", "json")
        d = json.loads(text)
        assert code == 0 and d["mode"] == "sampled" and d["shots"] == 20000 and d["H"] == 3

    def test_bad_shots(self):
        code, _ = run("hamming", "--n", "2", "expr:x0", "expr:x1", "--mode", "sampled", "--shots", "0")
        assert code == EXIT_INPUT

    def test_files(self, tmp_path):
        for name, text in [("f", "x0 & x1"), ("g", "x0 | x1")]:
            save_truth_table(parse_expression(text, 2), tmp_path / f"{name}.tt")
        code, text = run("hamming", f"file:{tmp_path / 'f.tt'}", f"file:{tmp_path / 'g.tt'}",
                         "--output", "json")
        assert code == 0 and json.loads(text)["H"] == 3

    def test_file_arity_conflict(self, tmp_path):
        save_truth_table(parse_expression("x0", 3), tmp_path / "f.tt")
        code, _ = run("hamming", "--n", "2", f"file:{tmp_path / 'f.tt'}", "expr:x0")
        assert code == EXIT_INPUT

    def test_missing_file(self, tmp_path):
        code, _ = run("hamming", f"file:{tmp_path / 'nope.tt'}", f"file:{tmp_path / 'nope.tt'}")
        assert code == EXIT_INPUT

    def test_json_roundtrip(self):
        _, text = run("hamming", "--n", "3", "expr:x0|x2", "expr:~x1", "expr:x0^x1", "--output", "json")
        d = json.loads(text)
        assert HammingReport.from_dict(d).to_dict() == d

    def test_inconsistency_exit_code(self, monkeypatch):
        from qhamming import cli
        from qhamming.errors import InconsistencyError

        def boom(*args, **kwargs):
            raise InconsistencyError("corrupted reading")

        monkeypatch.setattr(cli, "run_proposed_algorithm", boom)
        code, text = run("hamming", "--n", "2", "expr:x0", "expr:x1", "--output", "json")
        assert code == EXIT_INCONSISTENT and text == ""


class TestCategorize:
    def test_balanced(self):
        code, text = run("categorize", "--n", "2", "expr:x0^x1", "--output", "json")
        d = json.loads(text)
        assert code == 0 and d["category"] == "balanced" and abs(d["C"] - 1) <= 1e-9

    def test_constant(self):
        code, text = run("categorize", "--n", "3", "expr:1")
        assert code == 0 and "category=constant" in text and "C=0" in text

    def test_other(self):
        _, text = run("categorize", "--n", "2", "expr:x0&x1", "--output", "json")
        d = json.loads(text)
        assert d["category"] == "other" and abs(d["C"] - 0.8660254037844386) <= 1e-9

    def test_two_specs(self):
        assert run("categorize", "--n", "2", "expr:x0", "expr:x1")[0] == EXIT_INPUT


class TestInspect:
    def _lines(self, text):
        return [ln for ln in text.splitlines() if not ln.startswith("#")]

    def test_phi1(self):
        code, text = run("inspect", "--n", "2", "--stage", "phi1", "expr:x0&x1", "expr:x0|x1")
        lines = self._lines(text)
        assert code == 0 and len(lines) == 4
        assert all(ln.endswith("+0.500000+0.000000j") for ln in lines)

    def test_phi4_single_chi(self):
        _, text = run("inspect", "--n", "2", "--stage", "phi4", "expr:x0&x1", "expr:x0|x1")
        chi_set = [ln for ln in self._lines(text) if ln.split("|")[2].split()[0] == "1"]
        assert chi_set == ["3 | 11 | 1  +0.500000+0.000000j"]

    def test_json(self):
        _, text = run("inspect", "--n", "2", "--stage", "phi4", "expr:x0&x1", "expr:x0|x1",
                      "--output", "json")
        amps = json.loads(text)["amplitudes"]
        assert [a["chi"] for a in amps].count(1) == 1

    def test_unknown_stage(self):
        code, text = run("inspect", "--n", "2", "--stage", "phi9", "expr:x0", "expr:x1")
        assert code == EXIT_INPUT and text == ""

    def test_too_large(self):
        assert run("inspect", "--n", "13", "--stage", "phi1", "expr:x0", "expr:x1")[0] == EXIT_INPUT


class TestBench:
    def test_rows(self):
        code, text = run("bench", "--n", "4..8", "--kappa", "2", "--repetitions", "1")
        rows = list(csv.reader(io.StringIO(text)))
        assert code == 0
        assert rows[0] == ["n", "kappa", "seconds", "amps_per_sec"]
        assert [int(r[0]) for r in rows[1:]] == [4, 5, 6, 7, 8]

    def test_schema_stable(self):
        a = run("bench", "--n", "3..4", "--repetitions", "1")[1].splitlines()
        b = run("bench", "--n", "3..4", "--repetitions", "1")[1].splitlines()
        assert a[0] == b[0] and len(a) == len(b)

    def test_cap(self):
        code, text = run("bench", "--n", "30")
        assert code == EXIT_INPUT and text == ""

    @pytest.mark.parametrize("bad", ["a..b", "9..3"])
    def test_bad_range(self, bad):
        assert run("bench", "--n", bad)[0] == EXIT_INPUT


def test_load_function_kinds():
    assert load_function("expr:x0", 1).bitstring() == "01"
    for spec in ["x0", "bogus:x0"]:
        with pytest.raises(ValueError):
            load_function(spec, 1)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qhamming", "categorize", "--n", "2", "expr:x0^x1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and "category=balanced" in proc.stdout
