import json
import os
import shutil
import subprocess
import sys

import pytest

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CORPUS = os.path.join(REPO, "corpus")


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "logdiv.cli", *args],
        capture_output=True, text=True, env=env)


def write_doc(path, doc):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)


def strip_timings(obj):
    if isinstance(obj, dict):
        return {k: strip_timings(v) for k, v in obj.items() if k != "timings"}
    if isinstance(obj, list):
        return [strip_timings(v) for v in obj]
    return obj


class TestAnalyzeHuman:
    def test_quartic_full_report(self):
        res = run_cli("analyze", os.path.join(CORPUS, "quartic-cross.json"),
                      "--all")
        assert res.returncode == 0
        assert res.stdout.splitlines() == [
            "label: quartic-cross",
            "f = x^3*y - x*y^3  in Q[x, y]",
            "weights: (1, 1), degree 4, field weights [0, 2]",
            "free: yes (determinant unit -1/2)",
            "linear: False",
            "koszul: True",
            "connection conditions: True, True",
            "ft1: dimension 1 (representatives: x^2*y^2)",
            "lft1: refused: not a linear free divisor",
            "h0: 0",
            "jacobian degree bound: 1",
        ]

    def test_default_stages_skip_cohomology(self):
        res = run_cli("analyze", os.path.join(CORPUS, "quartic-cross.json"))
        assert res.returncode == 0
        assert "ft1: not computed" in res.stdout
        assert "lft1: not computed" in res.stdout
        assert "koszul: True" in res.stdout

    def test_reduction_is_reported(self, tmp_path):
        doc = {"label": "cyl", "variables": ["x", "y", "z"],
               "f": "x^3*y - x*y^3"}
        path = tmp_path / "cyl.json"
        write_doc(path, doc)
        res = run_cli("analyze", str(path), "--ft1")
        assert res.returncode == 0
        assert "reduced: dropped unused variables z" in res.stdout
        assert "ft1: dimension 1 (representatives: x^2*y^2)" in res.stdout


class TestAnalyzeJson:
    def test_matches_stored_report(self, tmp_path):
        out = tmp_path / "report.json"
        res = run_cli("analyze", os.path.join(CORPUS, "quartic-cross.json"),
                      "--all", "--json", str(out))
        assert res.returncode == 0
        with open(out, encoding="utf-8") as fh:
            report = json.load(fh)
        with open(os.path.join(CORPUS, "quartic-cross.expected.json"),
                  encoding="utf-8") as fh:
            golden = json.load(fh)
        assert strip_timings(report) == strip_timings(golden)

    def test_schema_and_tool_fields(self, tmp_path):
        out = tmp_path / "report.json"
        run_cli("analyze", os.path.join(CORPUS, "nc-2.json"),
                "--json", str(out))
        with open(out, encoding="utf-8") as fh:
            report = json.load(fh)
        assert report["schema"] == 1
        assert report["tool"]["name"] == "logdiv"
        assert report["ft1"] == "not computed"
        assert report["profile"]["free"] is True

    def test_deterministic_modulo_timings(self, tmp_path):
        path = os.path.join(CORPUS, "discriminant-234.json")
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        first = run_cli("analyze", path, "--all", "--json", str(out1))
        second = run_cli("analyze", path, "--all", "--json", str(out2))
        assert first.stdout == second.stdout
        with open(out1, encoding="utf-8") as fh:
            a = json.load(fh)
        with open(out2, encoding="utf-8") as fh:
            b = json.load(fh)
        assert strip_timings(a) == strip_timings(b)


class TestAnalyzeErrors:
    def test_unreadable_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ not json")
        res = run_cli("analyze", str(path))
        assert res.returncode == 2

    def test_unknown_field_rejected(self, tmp_path):
        path = tmp_path / "doc.json"
        write_doc(path, {"label": "a", "variables": ["x", "y"], "f": "x*y",
                         "extra": 1})
        res = run_cli("analyze", str(path))
        assert res.returncode == 2
        assert "unknown fields: extra" in res.stderr

    def test_duplicate_variables_rejected(self, tmp_path):
        path = tmp_path / "doc.json"
        write_doc(path, {"label": "a", "variables": ["x", "x"], "f": "x"})
        assert run_cli("analyze", str(path)).returncode == 2

    def test_wrong_weight_count_rejected(self, tmp_path):
        path = tmp_path / "doc.json"
        write_doc(path, {"label": "a", "variables": ["x", "y"], "f": "x*y",
                         "weights": [1]})
        assert run_cli("analyze", str(path)).returncode == 2

    def test_inconsistent_weights_rejected(self, tmp_path):
        path = tmp_path / "doc.json"
        write_doc(path, {"label": "a", "variables": ["x", "y"],
                         "f": "x^3 + y^2 + x*y", "weights": [2, 3]})
        res = run_cli("analyze", str(path))
        assert res.returncode == 2

    def test_divisor_missing_origin(self, tmp_path):
        path = tmp_path / "doc.json"
        write_doc(path, {"label": "a", "variables": ["x", "y"], "f": "x*y + 1"})
        res = run_cli("analyze", str(path))
        assert res.returncode == 2
        assert "origin" in res.stdout

    def test_nonreduced_exits_3(self, tmp_path):
        path = tmp_path / "doc.json"
        write_doc(path, {"label": "a", "variables": ["x", "y"], "f": "x^2*y"})
        res = run_cli("analyze", str(path))
        assert res.returncode == 3
        assert "squarefree" in res.stdout

    def test_non_free_divisor_exits_4(self, tmp_path):
        path = tmp_path / "doc.json"
        write_doc(path, {"label": "a", "variables": ["x", "y", "z"],
                         "f": "x^2 + y^2 + z^2"})
        res = run_cli("analyze", str(path))
        assert res.returncode == 4

    def test_non_logarithmic_matrix_exits_4(self, tmp_path):
        path = tmp_path / "doc.json"
        write_doc(path, {"label": "a", "variables": ["x", "y"], "f": "x*y",
                         "saito_matrix": [["0", "y"], ["x", "0"]]})
        res = run_cli("analyze", str(path))
        assert res.returncode == 4
        assert "not logarithmic" in res.stdout

    def test_wrong_determinant_matrix_exits_4(self, tmp_path):
        path = tmp_path / "doc.json"
        write_doc(path, {"label": "a", "variables": ["x", "y"], "f": "x*y",
                         "saito_matrix": [["x", "0"], ["0", "1"]]})
        res = run_cli("analyze", str(path))
        assert res.returncode == 4

    def test_timeout_exits_5(self):
        res = run_cli("analyze", os.path.join(CORPUS, "linear-nonreductive-5.json"),
                      "--all", "--timeout", "0.3")
        assert res.returncode == 5
        assert "timed out" in res.stdout

    def test_budget_env_override_exits_5(self):
        res = run_cli("analyze", os.path.join(CORPUS, "discriminant-234.json"),
                      env_extra={"LOGDIV_BUDGET": "1"})
        assert res.returncode == 5

    def test_bad_budget_value_rejected(self):
        res = run_cli("analyze", os.path.join(CORPUS, "nc-2.json"),
                      env_extra={"LOGDIV_BUDGET": "many"})
        assert res.returncode == 2


class TestCorpusRun:
    def test_full_corpus_is_green(self):
        res = run_cli("corpus-run", CORPUS)
        assert res.returncode == 0, res.stdout
        lines = res.stdout.splitlines()
        assert lines[-1] == "14 corpus entries, 0 mismatched"
        labels = [ln.split()[0] for ln in lines[:-1]]
        assert labels == sorted(labels)
        assert all(ln.split()[1] == "ok" for ln in lines[:-1])

    def test_empty_directory(self, tmp_path):
        res = run_cli("corpus-run", str(tmp_path))
        assert res.returncode == 0
        assert "0 corpus entries" in res.stdout

    def test_corrupted_golden_names_the_field(self, tmp_path):
        for name in ("nc-2.json", "nc-2.expected.json"):
            shutil.copy(os.path.join(CORPUS, name), tmp_path / name)
        golden_path = tmp_path / "nc-2.expected.json"
        with open(golden_path, encoding="utf-8") as fh:
            golden = json.load(fh)
        golden["ft1"]["dimension"] = 7
        write_doc(golden_path, golden)
        res = run_cli("corpus-run", str(tmp_path))
        assert res.returncode == 1
        assert "MISMATCH" in res.stdout
        assert "ft1.dimension" in res.stdout
        assert "1 mismatched" in res.stdout

    def test_missing_golden_is_a_mismatch(self, tmp_path):
        shutil.copy(os.path.join(CORPUS, "nc-2.json"), tmp_path / "nc-2.json")
        res = run_cli("corpus-run", str(tmp_path))
        assert res.returncode == 1
        assert "expected report file missing" in res.stdout

    def test_timings_are_ignored(self, tmp_path):
        for name in ("nc-2.json", "nc-2.expected.json"):
            shutil.copy(os.path.join(CORPUS, name), tmp_path / name)
        golden_path = tmp_path / "nc-2.expected.json"
        with open(golden_path, encoding="utf-8") as fh:
            golden = json.load(fh)
        golden["timings"] = {"made": "up"}
        write_doc(golden_path, golden)
        res = run_cli("corpus-run", str(tmp_path))
        assert res.returncode == 0
