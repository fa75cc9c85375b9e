import csv
import io
import json
import re
import subprocess
import sys
from pathlib import Path

import pytest

from alphabound.cli import main
from alphabound.cliques import count_cliques
from alphabound.constructions import ConstructionSpec
from alphabound.graph import Graph, complete_graph, petersen_graph
from alphabound.harness import CSV_COLUMNS
from alphabound.io import load_graph, save_graph

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def petersen_file(tmp_path):
    path = tmp_path / "petersen.col"
    save_graph(petersen_graph(), path)
    return str(path)


def test_analyze_petersen(capsys, petersen_file):
    code, out, _ = run(capsys, "analyze", petersen_file)
    assert code == 0
    lines = dict(re.split(r"\s{2,}", line, maxsplit=1) for line in out.splitlines())
    assert lines["s, t"] == "3, 0"
    assert lines["exact alpha"] == "4"
    assert int(lines["alg turan_greedy"]) >= 3


def test_analyze_k10_csv(capsys, tmp_path):
    path = tmp_path / "k10.col"
    save_graph(complete_graph(10), path)
    code, out, _ = run(capsys, "analyze", str(path), "--csv")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert row["t"] == "120" and row["exact_alpha"] == "1" and row["alg_best_size"] == "1"


def test_analyze_s_too_large_is_usage_error(capsys, petersen_file):
    code, _, err = run(capsys, "analyze", petersen_file, "--s", "11")
    assert code == 2 and "s" in err


def test_analyze_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", str(tmp_path / "none.col"))
    assert code == 1 and "none.col" in err


def test_analyze_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.col"
    path.write_text("p edge 3 1\ne 1 1\n")
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 1 and "self-loop" in err


def test_construct_writes_graph_and_spec(capsys, tmp_path):
    out = tmp_path / "g.col"
    code, stdout, _ = run(capsys, "construct", "clique_plus_trianglefree", "--n", "100", "--t", "120",
                          "--seed", "3", "--out", str(out))
    assert code == 0
    assert "triangles 120" in stdout
    g = load_graph(out)
    assert count_cliques(g, 3).t == 120
    spec = ConstructionSpec.from_text((tmp_path / "g.col.spec").read_text())
    assert spec.a == 10 and spec.achieved_t == 120


def test_construct_lex_lambda_one_emits_base(capsys, tmp_path):
    # n = 60, t just over the threshold: lambda rounds to 1
    out = tmp_path / "g.txt"
    code, stdout, _ = run(capsys, "construct", "lex_blowup", "--n", "60", "--t", "1000",
                          "--out", str(out), "--format", "edgelist")
    assert code == 0
    spec = ConstructionSpec.from_text((tmp_path / "g.txt.spec").read_text())
    assert spec.lam == 1 and spec.achieved_t == 0
    assert "triangles 0" in stdout


def test_construct_missing_out_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["construct", "lex_blowup", "--n", "50", "--t", "10"])
    assert info.value.code == 2


def test_construct_regime_violation(capsys, tmp_path):
    code, _, err = run(capsys, "construct", "lex_blowup", "--n", "100", "--t", "10",
                       "--out", str(tmp_path / "x.col"))
    assert code == 2 and "below" in err


def test_constants_table(capsys):
    code, out, _ = run(capsys, "constants", "--s-max", "3", "--csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["s"] for r in rows] == ["2", "3"]
    s3 = rows[1]
    assert float(s3["c_s_prime"]) == pytest.approx(0.99 * 0.2637626158, rel=1e-8)
    assert float(s3["c_s"]) == pytest.approx(0.99 * float(s3["c_s_prime"]) * 2 ** (-4 / 3), rel=1e-8)
    assert all(float(s3[k]) > 0 for k in ("resid_cap", "resid_recursion", "resid_sparsify"))


def test_constants_s_max_two(capsys):
    code, out, _ = run(capsys, "constants", "--s-max", "2", "--csv")
    assert code == 0
    assert out.strip().splitlines()[1:] == ["2,,0.3333333333,,,,"]


def test_constants_bad_base(capsys):
    code, _, _ = run(capsys, "constants", "--c2", "0.9")
    assert code == 2


def test_sweep_golden(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "30", "--s", "3", "--t-grid", "0,10,100,1000",
                       "--seeds", "0-1")
    assert code == 0
    assert out == (DATA / "golden_sweep.csv").read_text()


def test_csv_header_is_fixed(capsys):
    assert CSV_COLUMNS == (
        "kind", "n", "m", "s", "t", "d_avg", "seed", "bound_t1", "bound_t2", "bound_aks",
        "alg_best", "alg_best_size", "exact_alpha", "runtime_ms",
    )
    assert (DATA / "golden_sweep.csv").read_text().splitlines()[0] == ",".join(CSV_COLUMNS)


def test_help_documents_columns(capsys):
    with pytest.raises(SystemExit):
        main(["sweep", "--help"])
    out = capsys.readouterr().out
    assert "alg_best_size" in out and "runtime_ms" in out


def test_sweep_to_file_and_summary(capsys, tmp_path):
    out = tmp_path / "s.csv"
    code, stdout, err = run(capsys, "sweep", "--n", "40", "--t-grid", "log:1:8000:6", "--seed", "4",
                            "--out", str(out), "--summary")
    assert code == 0 and stdout == ""
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 6
    assert "slope" in err


def test_sweep_exact_alpha_roughly_monotone(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "60", "--t-grid", "0,50,200,1000,5000", "--seeds", "0-4")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    by_t: dict[int, list[int]] = {}
    for i, row in enumerate(rows):
        by_t.setdefault(i // 5, []).append(int(row["exact_alpha"]))
    means = [sum(v) / len(v) for _, v in sorted(by_t.items())]
    # nonincreasing up to seed noise
    assert all(b <= a + 1.5 for a, b in zip(means, means[1:]))
    assert means[-1] < means[0] - 5


def test_sweep_bad_grid(capsys):
    with pytest.raises(SystemExit) as info:
        main(["sweep", "--n", "30", "--t-grid", "log:1:x"])
    assert info.value.code == 2


def test_calibrate_small(capsys, tmp_path):
    out = tmp_path / "c.json"
    code, _, _ = run(capsys, "calibrate", "--size", "20", "--seed", "1", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["c_t2"] > 0 and data["c_aks"] > 0


def test_module_entry_point_is_deterministic(tmp_path, petersen_file):
    cmd = [sys.executable, "-m", "alphabound", "analyze", petersen_file, "--csv", "--seed", "5"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first.startswith(b"kind,")
