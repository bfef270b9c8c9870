import csv
import io
import json
import re
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enriques_salem.cache import ReportCache
from enriques_salem.cli import dumps, run
from enriques_salem.dynamics import SalemReport, analyze, get_family


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line]


def test_experiment1_rows():
    code, out = call("experiment1", "--format", "json")
    assert code == 0
    rows = json_lines(out)
    assert [len(r["word"]) for r in rows] == list(range(2, 11))
    assert rows[0]["lambda"] is None and rows[0]["classification"] == "Unit"
    assert rows[2]["salem"] == [1, -14, 1]
    assert rows[2]["lambda"]["display"] == "13.9282"
    assert rows[1]["salem"] == [1, -16, 14, -16, 1]


def test_experiment1_csv_has_four_places():
    code, out = call("experiment1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 9
    assert all(re.fullmatch(r"\d+\.\d{4}", r["lambda"]) for r in rows)
    assert rows[0]["hyperbolic"] == "no"
    assert rows[0]["classification"] == "AllCyclotomic"


@pytest.mark.parametrize(
    "m,k,salem,display",
    [(1, 4, "x^2 - 10x + 1", "9.8989"), (2, 3, "x^2 - 8x + 1", "7.8729"), (4, 3, "x^4 - 5x^3 - 5x + 1", "5.1792")],
)
def test_experiment2_rows(m, k, salem, display):
    code, out = call("experiment2", "--m", str(m), "--format", "csv")
    assert code == 0
    row = {r["k"]: r for r in csv.DictReader(io.StringIO(out))}[str(k)]
    assert row["salem"] == salem
    assert row["lambda"] == display


def test_text_format_is_a_table():
    code, out = call("experiment2", "--m", "3")
    lines = out.splitlines()
    assert lines[0].split()[:3] == ["k", "hyperbolic", "word"]
    assert len(lines) == 10


@pytest.mark.parametrize(
    "word,eckardt,salem,display",
    [
        ("1,2,3,4,5,6,7", "none", [1, -5, 1], "4.7912"),
        ("2,5,8,7,10", "table2", [1, -1, -2, -1, 1], "2.0810"),
        ("6,8,7,1,9,4", "12,13,14,23,24,34", [1, -4, -1, -4, -1, -4, 1], "4.4480"),
    ],
)
def test_hessian_command(word, eckardt, salem, display):
    code, out = call("hessian", "--word", word, "--eckardt", eckardt, "--format", "json")
    assert code == 0
    (rep,) = json_lines(out)
    assert rep["salem"] == salem
    assert rep["lambda"]["display"] == display


@pytest.mark.parametrize(
    "argv",
    [
        ["hessian", "--word", "1,11"],
        ["hessian", "--word", "1,x"],
        ["hessian", "--word", "1,2", "--eckardt", "16"],
        ["experiment2", "--m", "5"],
        ["search", "--family", "nope", "--max-len", "2"],
        ["search", "--family", "hessian", "--max-len", "0"],
        ["growth", "--family", "hessian", "--h", "1,2", "--r", "10", "--max-len", "2"],
        ["growth", "--family", "hessian", "--r", "ten", "--max-len", "2"],
        ["frobnicate"],
    ],
)
def test_flag_errors_exit_2(argv):
    code, _ = call(*argv)
    assert code == 2


def test_search_includes_table_word():
    code, out = call("search", "--family", "hessian", "--mode", "exhaustive", "--max-len", "4", "--distinct",
                     "--format", "json", "--all")
    assert code == 0
    summary = json.loads(out)
    assert [1, 3, 2, 6] in summary["ties"]["4"]
    assert any(r["word"] == [1, 3, 2, 6] for r in summary["reports"])
    minima = {r["salem_degree"]: r for r in summary["minima"]}
    assert minima[4]["lambda"]["display"] == "4.3306"


def test_search_seed_is_deterministic():
    argv = ["search", "--family", "hessian:table2", "--mode", "random", "--max-len", "6", "--trials", "200",
            "--seed", "7", "--format", "json"]
    assert call(*argv) == call(*argv)


def test_search_budget_exit_3():
    code, out = call("search", "--family", "exp1", "--max-len", "3", "--budget", "4", "--format", "json")
    assert code == 3
    assert json.loads(out)["budget_exhausted"] is True


def test_growth_command():
    code, out = call("growth", "--family", "hessian", "--h", "delta", "--r", "10", "--max-len", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["count"] >= 1
    coords = ",".join(["1"] * 10)
    assert call("growth", "--family", "hessian", "--h", coords, "--r", "10", "--max-len", "3", "--format", "json") == (0, out)


def test_growth_budget_exit_3():
    code, _ = call("growth", "--family", "hessian", "--r", "100", "--max-len", "4", "--budget", "20")
    assert code == 3


@settings(max_examples=25)
@given(st.lists(st.integers(1, 10), min_size=1, max_size=7))
def test_json_reports_round_trip(word):
    code, out = call("hessian", "--word", ",".join(map(str, word)), "--eckardt", "table2", "--format", "json")
    line = out.rstrip("\n")
    assert dumps(SalemReport.from_dict(json.loads(line)).to_dict()) == line


def test_cache_hits_do_not_change_results(tmp_path):
    path = tmp_path / "cache.jsonl"
    argv = ["search", "--family", "hessian", "--max-len", "3", "--format", "json", "--cache", str(path)]
    first = call(*argv)
    n_lines = len(path.read_text().splitlines())
    assert n_lines > 0
    second = call(*argv)
    assert first == second
    assert len(path.read_text().splitlines()) == n_lines
    assert first == call(*argv[:-2])


def test_cache_survives_corruption(tmp_path):
    path = tmp_path / "cache.jsonl"
    argv = ["experiment1", "--format", "json", "--cache", str(path)]
    clean = call(*argv)
    with path.open("a") as fh:
        fh.write("{not json\n")
        fh.write('{"key": "x", "report": {"word": []}}\n')
    assert call(*argv) == clean
    lines = path.read_text().splitlines()
    assert all(json.loads(line)["report"]["word"] for line in lines)


def test_cache_is_keyed_by_configuration(tmp_path):
    cache = ReportCache(tmp_path / "c.jsonl")
    general, special = get_family("hessian"), get_family("hessian:table2")
    word = (2, 5, 8, 7, 10)
    cache.store(general, analyze(word, general))
    assert cache.lookup(special, word) is None
    hit = cache.lookup(general, (5, 8, 7, 10, 2))
    assert hit.word == (5, 8, 7, 10, 2)
    assert hit.salem_factor == analyze(word, general).salem_factor


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "enriques_salem", "hessian", "--word", "2,6,1,3", "--format", "csv"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "4.3306" in proc.stdout
    bad = subprocess.run([sys.executable, "-m", "enriques_salem", "hessian"], capture_output=True, text=True)
    assert bad.returncode == 2
