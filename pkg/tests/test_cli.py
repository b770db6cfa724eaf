import json

import pytest

from hochgap.cli import (EXIT_ERROR, EXIT_NOT_CERTIFIED, EXIT_OK, GOLDEN_DIR, JobSpec,
                         corpus_list, digest, golden_text, load_algebra, main, run)
from hochgap.presentation import parse_presentation

from conftest import CORPUS


def test_corpus_has_the_required_entries():
    entries = corpus_list()
    assert len(entries) >= 8
    assert {e["name"] for e in entries} >= set(CORPUS)


@pytest.mark.parametrize("name", CORPUS)
def test_golden_files_match(name):
    text = golden_text(name)
    assert text == (GOLDEN_DIR / f"{name}.json").read_text()
    entry = next(e for e in corpus_list() if e["name"] == name)
    assert digest(text) == entry["digest"]


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_round_trip(name):
    pres = load_algebra(name)
    assert parse_presentation(pres.to_text()) == pres


def test_zsqrt2_golden_table():
    rec = json.loads((GOLDEN_DIR / "zsqrt2.json").read_text())
    hh = [e["descriptor"] for e in rec["hh"]["entries"]]
    assert hh == ["Z + Z", "Z/2 + Z/4", "0", "Z/2 + Z/4", "0", "Z/2 + Z/4"]


def test_campillo_expectations():
    rec = json.loads((GOLDEN_DIR / "campillo.json").read_text())
    assert rec["deviations"] == [1, 1]
    assert rec["closed"]["1"]["closed"] is True
    assert rec["closed"]["2"]["closed"] is False
    assert rec["minimal_resolution_ranks"][:4] == [1, 1, 1, 2]


def test_run_examples():
    rep = run(JobSpec("hh", "zsqrt2", cutoff=5))
    entries = rep.results["table"]["entries"]
    assert [e["descriptor"] for e in entries] == ["Z + Z"] + ["Z/2 + Z/4", "0"] * 2 + ["Z/2 + Z/4"]
    rep = run(JobSpec("deviations", "campillo"))
    assert rep.results["deviations"] == {"eps2": 1, "eps3": 1}
    rep = run(JobSpec("smooth-check", "qx_poly", cutoff=4))
    assert rep.results["overall"] == "smooth-certified" and rep.exit_code == EXIT_OK


def test_structured_output_is_deterministic():
    job = JobSpec("smooth-check", "dual_numbers_f5", cutoff=4, fmt="json")
    a, b = run(job), run(job)
    assert a.to_json() == b.to_json()
    assert "timing" not in json.loads(a.to_json())


def test_exit_codes(capsys, tmp_path):
    assert main(["smooth-check", "--algebra", "qx_poly", "--max-degree", "4"]) == EXIT_OK
    assert main(["smooth-check", "--algebra", "zsqrt2", "--max-degree", "4"]) == EXIT_NOT_CERTIFIED
    assert main(["hh", "--algebra", str(tmp_path / "missing.toml")]) == EXIT_ERROR
    assert main(["closed", "--algebra", "campillo", "--p", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "2-closed: false" in out


def test_parse_errors_report_line_and_column(capsys, tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text('ring = "Q"\nvars = ["x"]\nrelations = ["x^2 +* 1"]\n')
    assert main(["hh", "--algebra", str(bad)]) == EXIT_ERROR
    err = capsys.readouterr().err
    assert "line 3" in err
    bad.write_text('ring = "Q"\nvars = ["x"\n')
    assert main(["hh", "--algebra", str(bad)]) == EXIT_ERROR
    err = capsys.readouterr().err
    assert "line" in err and "column" in err


def test_unsupported_ring_is_surfaced(capsys, tmp_path):
    f = tmp_path / "zz.toml"
    f.write_text('ring = "Z"\nvars = ["s", "t"]\nrelations = ["s^2 - 2", "t^2 - 3"]\n')
    assert main(["hh", "--algebra", str(f), "--max-degree", "2"]) == EXIT_ERROR
    assert "monogenic" in capsys.readouterr().err


def test_json_and_text_formats(capsys):
    assert main(["hh", "--algebra", "dual_numbers_f5", "--max-degree", "3", "--format", "json"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert [e["descriptor"] for e in rec["results"]["table"]["entries"]] == ["k^2", "k^1", "k^1", "k^1"]
    assert main(["hh", "--algebra", "dual_numbers_f5", "--max-degree", "3", "--strategy", "bar"]) == 0
    assert "k^2" in capsys.readouterr().out


def test_module_files(tmp_path):
    f = tmp_path / "k.toml"
    f.write_text('matrix = [["x"]]\n')
    rep = run(JobSpec("hh", "dual_numbers_f5", module=str(f), cutoff=2))
    assert [e["descriptor"] for e in rep.results["table"]["entries"]] == ["k^1", "k^1", "k^1"]


def test_invalid_jobs():
    with pytest.raises(ValueError):
        JobSpec("frobnicate", "qx_poly")
    with pytest.raises(ValueError):
        JobSpec("hh", "qx_poly", cutoff=-1)
