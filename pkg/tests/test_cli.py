from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import pytest

from cliffspace.cli import (
    FamilyParseError,
    FamilyValidationError,
    RunConfig,
    format_family,
    main,
    parse_family_file,
    parse_family_text,
    run,
)
from cliffspace.clifford import toric_quadrics
from cliffspace.minimal import random_certified_family

TORIC2 = "n: 2\nk: 2\nmatrices:\n  - [[1, 0], [0, 0]]\n  - [[0, 0], [0, 1]]\n"
DEGENERATE = 'n: 2\nk: 2\nmatrices:\n  - [[1, 0], [0, 0]]\n  - [[0, "1/2"], ["1/2", 0]]\n'


def test_parse_toric(tmp_path):
    p = tmp_path / "toric.fam"
    p.write_text(TORIC2)
    f = parse_family_file(p)
    assert f == toric_quadrics(2) and f.k == 2


def test_parse_bad_rational():
    text = 'n: 2\nk: 1\nmatrices:\n  - [[1, "1/0"], [0, 0]]\n'
    with pytest.raises(FamilyParseError) as exc:
        parse_family_text(text)
    assert (exc.value.line, exc.value.column) == (4, 10)


def test_parse_syntax_error_has_position():
    with pytest.raises(FamilyParseError) as exc:
        parse_family_text("n: 2\nk: [1\n")
    assert exc.value.line is not None


def test_asymmetric_names_matrix():
    text = "n: 2\nk: 2\nmatrices:\n  - [[1, 0], [0, 0]]\n  - [[0, 1], [0, 0]]\n"
    with pytest.raises(FamilyValidationError) as exc:
        parse_family_text(text)
    assert exc.value.matrix_index == 1


def test_duplicated_matrix_gives_dependency():
    text = "n: 2\nk: 2\nmatrices:\n  - [[1, 0], [0, 2]]\n  - [[1, 0], [0, 2]]\n"
    with pytest.raises(FamilyValidationError) as exc:
        parse_family_text(text)
    assert exc.value.dependency == (Fraction(1), Fraction(-1))


def test_format_roundtrip():
    f = random_certified_family(3, 4)
    assert parse_family_text(format_family(f)) == f


def test_config_invariants():
    with pytest.raises(ValueError):
        RunConfig("minimal")
    with pytest.raises(ValueError):
        RunConfig("maximal", degree_cap=0)
    with pytest.raises(ValueError):
        RunConfig("toric", n=2)


def test_maximal_n2_report(capsys):
    assert main(["maximal", "--n", "2", "--degree-cap", "8", "--no-timing"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema_version"] == 1 and doc["elapsed_ms"] is None
    assert set(doc) == {"schema_version", "command", "config", "records", "elapsed_ms"}
    names = {r["name"]: r for r in doc["records"]}
    cross = names["n=2 dims (ceil(i/2)+1)(floor(i/2)+1)"]
    assert cross["status"] == "pass" and cross["observed"] == [1, 2, 4, 6, 9, 12, 16, 20, 25]
    assert all(r["anchor"] for r in doc["records"])


def test_toric_report(capsys):
    assert main(["toric", "--n", "3", "--q", "-1", "--output-format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    by = {r["name"]: r for r in rows}
    assert by["PBW basis"]["status"] == "pass"
    assert json.loads(by["dual dims C(n, i)"]["observed"]) == [1, 3, 3, 1, 0]
    assert json.loads(by["A_{T,q} dims = polynomial dims"]["observed"]) == [1, 3, 6, 10, 15, 21, 28]


def test_degenerate_family_is_inconclusive(tmp_path, capsys):
    p = tmp_path / "degenerate.fam"
    p.write_text(DEGENERATE)
    assert main(["minimal", "--family", str(p), "--output-format", "text"]) == 0
    out = capsys.readouterr().out
    assert "INCONCLUSIVE" in out and "FAIL " not in out


def test_bad_family_file_is_a_failed_record(tmp_path, capsys):
    p = tmp_path / "bad.fam"
    p.write_text('n: 2\nk: 1\nmatrices:\n  - [[1, "x"], [0, 0]]\n')
    assert main(["minimal", "--family", str(p)]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["records"][0]["status"] == "fail"
    assert "line 4" in doc["records"][0]["note"]


def test_json_is_deterministic_across_threads():
    a = run(RunConfig("verify-all", timing=False, threads=1)).to_json()
    b = run(RunConfig("verify-all", timing=False, threads=4)).to_json()
    assert a == b
    assert run(RunConfig("verify-all", timing=False)).exit_status == 0


def test_threads_env(monkeypatch):
    from cliffspace.cli import build_parser

    monkeypatch.setenv("CLIFFSPACE_THREADS", "3")
    assert build_parser().parse_args(["maximal"]).threads == 3
