from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from curvegerm.cli import main
from curvegerm.corpus import DEFAULT_CORPUS, CorpusEntry, corpus_to_list
from curvegerm.documents import dump_germ

# seed whose first valid random germ is the single smooth branch (2t, 3t^2)
SMOOTH_SEED = 22


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def corpus_file(tmp_path, name):
    entry = next(e for e in DEFAULT_CORPUS if e.name == name)
    return write(tmp_path, f"{name}.json", dump_germ(entry.germ))


# --- analyze -----------------------------------------------------------------------------


def test_analyze_cusp_with_oracle(tmp_path):
    code, text = run(["analyze", corpus_file(tmp_path, "cusp"), "--oracle"])
    assert code == 0
    assert "delta (branches + intersections) = 1" in text
    assert "mu = 2*delta - r + 1 = 2" in text
    assert "oracle mu = dim O/(g_x, g_y) = 2" in text
    assert "implicit equation: y^2 - x^3 = 0" in text
    assert "consistent: yes" in text


def test_analyze_json_report(tmp_path):
    code, text = run(["analyze", corpus_file(tmp_path, "cusp"), "--oracle", "--format", "json"])
    rep = json.loads(text)
    assert code == 0
    assert (rep["delta_total"], rep["mu_parameterized"], rep["oracle_mu"], rep["consistent"]) == (1, 2, 2, True)
    assert rep["per_branch"][0]["semigroup"] == {"gaps": [1], "conductor": 2, "generators": [2, 3]}


def test_analyze_node(tmp_path):
    code, text = run(["analyze", corpus_file(tmp_path, "node"), "--format", "json"])
    rep = json.loads(text)
    assert code == 0 and rep["delta_total"] == 1 and rep["mu_parameterized"] == 1
    assert rep["intersection_matrix"] == [[None, 1], [1, None]]


def test_analyze_non_primitive_branch(tmp_path, capsys):
    path = write(tmp_path, "bad.json", '{\n  "branches": [\n    {"x": [[1, 1, 2]], "y": [[1, 1, 4]]}\n  ]\n}\n')
    code, _ = run(["analyze", path])
    err = capsys.readouterr().err
    assert code == 1
    assert "not generically one-to-one" in err and "document line 3" in err


def test_analyze_parse_error(tmp_path, capsys):
    path = write(tmp_path, "broken.json", '{"branches": [\n  {"x": [[1, 1]], "y": []}\n]}')
    code, _ = run(["analyze", path])
    assert code == 1
    assert "branch 0 (line 2)" in capsys.readouterr().err


def test_analyze_missing_file(tmp_path, capsys):
    code, _ = run(["analyze", str(tmp_path / "nope.json")])
    assert code == 1 and "error" in capsys.readouterr().err


def test_analyze_precision_exhaustion_is_input_error(tmp_path, capsys):
    path = write(tmp_path, "short.json", '{"branches": [{"x": [[1, 1, 4]], "y": [[1, 1, 6], [1, 1, 7]], "precision": 10}]}')
    code, _ = run(["analyze", path])
    err = capsys.readouterr().err
    assert code == 1 and "value_semigroup" in err


def test_analyze_is_deterministic(tmp_path):
    path = corpus_file(tmp_path, "quadruple")
    first = run(["analyze", path, "--oracle", "--format", "json"])
    second = run(["analyze", path, "--oracle", "--format", "json"])
    assert first == second


def test_analyze_timing_flag(tmp_path):
    _, text = run(["analyze", corpus_file(tmp_path, "cusp"), "--timing"])
    assert "wall time:" in text


# --- euler -------------------------------------------------------------------------------


def test_euler_cross_cap(tmp_path):
    path = write(tmp_path, "cc.json", '{"n": 2, "r": 1, "chi_Xk": {"2": 1}, "upstairs": [0], "isolated_flag": true, "s": 0}')
    code, text = run(["euler", path])
    assert code == 0
    assert "Milnor number mu_0(h): 1" in text
    assert "reduced Euler characteristic of the Milnor fiber: -1" in text
    assert "reduced by r - 1 in degree zero" in text


def test_euler_passthrough(tmp_path):
    path = write(tmp_path, "p.json", '{"n": 3, "r": 1, "upstairs": [4]}')
    code, text = run(["euler", path])
    assert code == 0 and "reduced Euler characteristic of the Milnor fiber: 4" in text
    assert "mu_0" not in text


def test_euler_tacnode_unfolding(tmp_path):
    path = write(tmp_path, "t.json", '{"n": 2, "r": 2, "chi_Xk": {"2": 2}, "upstairs": [0, 0], "isolated_flag": true, "s": 0}')
    code, text = run(["euler", path])
    assert code == 0
    assert "Milnor number mu_0(h): 1" in text
    assert "plane-curve companion mu(g_0) = mu_0(h) + delta: 3" in text


def test_euler_inconsistent_table(tmp_path, capsys):
    path = write(tmp_path, "bad.json", '{"n": 2, "r": 3, "upstairs": [0, 0, 0], "isolated_flag": true, "s": 0}')
    code, _ = run(["euler", path])
    assert code == 2 and "inconsistent table" in capsys.readouterr().err


def test_euler_json(tmp_path):
    path = write(tmp_path, "cc.json", '{"n": 2, "r": 1, "chi_Xk": {"2": 1}, "upstairs": [0], "isolated_flag": true, "s": 0}')
    code, text = run(["euler", path, "--format", "json"])
    doc = json.loads(text)
    assert code == 0 and doc["mu_isolated"] == 1 and doc["reduced_euler"] == -1


# --- verify-corpus ---------------------------------------------------------------------------


def test_verify_default_corpus():
    code, text = run(["verify-corpus"])
    assert code == 0
    assert "10/10 germs passed" in text


def test_verify_filter_gives_one_row():
    code, text = run(["verify-corpus", "--filter", "cusp"])
    rows = [l for l in text.splitlines() if l.startswith("cusp")]
    assert code == 0 and len(rows) == 1 and "1/1 germs passed" in text


def test_verify_unknown_filter(capsys):
    code, _ = run(["verify-corpus", "--filter", "nothing"])
    assert code == 1


def test_verify_injected_wrong_expectation(tmp_path):
    entries = [CorpusEntry(e.germ, e.r, e.delta, e.mu + (e.name == "E6")) for e in DEFAULT_CORPUS]
    path = write(tmp_path, "corpus.json", json.dumps(corpus_to_list(entries)))
    code, text = run(["verify-corpus", "--corpus", path])
    assert code == 2
    assert "mismatch in E6: mu: computed 6 vs expected 7" in text


def test_verify_json_and_jobs():
    code, text = run(["verify-corpus", "--format", "json", "--jobs", "2"])
    doc = json.loads(text)
    assert code == 0 and doc["all_passed"]
    assert [r["name"] for r in doc["rows"]] == [e.name for e in DEFAULT_CORPUS]


# --- random-check ------------------------------------------------------------------------------


def test_random_check_smooth_seed():
    code, text = run(["random-check", "--count", "1", "--seed", str(SMOOTH_SEED)])
    assert code == 0
    assert "delta 0 = cokernel 0, mu 0 = oracle 0" in text
    assert "1 passed, 0 skipped, 0 failed" in text


def test_random_check_zero_count_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        run(["random-check", "--count", "0", "--seed", "1"])
    assert info.value.code == 1
    assert "must be at least 1" in capsys.readouterr().err


def test_random_check_deterministic():
    a = run(["random-check", "--count", "5", "--seed", "7", "--format", "json"])
    b = run(["random-check", "--count", "5", "--seed", "7", "--format", "json", "--jobs", "2"])
    assert a == b


def test_missing_command_is_usage_error():
    with pytest.raises(SystemExit) as info:
        run([])
    assert info.value.code == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "curvegerm", "verify-corpus", "--filter", "node"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and "1/1 germs passed" in proc.stdout
