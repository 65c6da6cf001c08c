"""
Unit Tests: Verification Suite and Report Export
"""

import io
import json
import zipfile
from pathlib import Path

import pytest

import settings
from exceptions import CapExceededError, ExportPathError
from instances import document_to_partition, load_instance, partition_to_document
from report_export import format_set, generate_report_export, render_report, write_report_export
from schemas import AxiomReport, CheckResult, SuiteReport
from verification import CHECK_ORDER, _to_result, verify_all

FIXTURES = Path(__file__).resolve().parent / "fixtures"


def _load(name: str):
    return document_to_partition(load_instance(FIXTURES / name))


# ============ SUITE ============


def test_example2_suite_passes():
    """Every check passes; the five non-singleton classes skip the identity check."""
    report = verify_all(_load("example2.json"))
    print(f"[TEST] Suite on example2.json: {report.counts()}")
    assert report.passed
    assert report.counts() == {"pass": 59, "fail": 0, "skipped": 5}
    assert report.universe == ["a", "b", "c", "d", "e"]
    skipped = {r.check for r in report.results if r.status == "skipped"}
    assert skipped == {"singleton-class-identity"}
    print("[PASS] suite passed")


def test_small_fixtures_pass():
    for name in ("singleton.json", "example1_partition.json"):
        report = verify_all(_load(name))
        assert report.passed, name
        identity = [
            r for r in report.results
            if r.check == "singleton-class-identity" and r.status == "pass"
        ]
        assert identity, name


def test_results_are_ordered_by_check():
    report = verify_all(_load("example2.json"))
    positions = [CHECK_ORDER.index(r.check) for r in report.results]
    assert positions == sorted(positions)
    assert {r.check for r in report.results} == set(CHECK_ORDER)


def test_suite_is_deterministic():
    first = verify_all(_load("example2.json"))
    second = verify_all(_load("example2.json"))
    assert first.model_dump() == second.model_dump()


def test_surplus_notes_use_element_names():
    report = verify_all(_load("example2.json"))
    (result,) = [
        r for r in report.results
        if r.check == "contraction-circuit-containment" and r.subject == "x=c"
    ]
    assert result.notes == {"surplus": [["d"], ["e"]]}


def test_suite_refuses_large_universes():
    with pytest.raises(CapExceededError):
        verify_all(_load("example2.json"), cap=4)


def test_pair_checks_are_skipped_above_their_cap(monkeypatch):
    monkeypatch.setattr(settings, "PAIR_CHECK_CAP", 3)
    monkeypatch.setattr(settings, "PAWLAK_CAP", 4)
    report = verify_all(_load("example2.json"))
    assert report.passed
    skipped = {(r.check, r.subject) for r in report.results if r.status == "skipped"}
    assert ("rank-axioms", "primal") in skipped
    assert ("rank-extension", "dual") in skipped
    assert ("pawlak-properties", "-") in skipped


def test_witnesses_are_translated_to_names():
    p = _load("example2.json")
    failed = AxiomReport.fail("base-axiom", "B2", [[2], [0, 1]], element=0)
    result = _to_result(failed, "primal", p)
    assert result.status == "fail"
    assert result.violated == "B2"
    assert result.witness == [["c"], ["a", "b"], ["a"]]

    skipped = _to_result(AxiomReport.ok("singleton-class-identity", skipped=["class-not-singleton"]), "x=a", p)
    assert skipped.status == "skipped"


# ============ RENDERING AND EXPORT ============


def test_rendered_report():
    report = verify_all(_load("example2.json"))
    text = render_report(report)
    lines = text.splitlines()
    assert lines[0] == f"instance {report.instance_digest}"
    assert lines[1] == "universe: a b c d e"
    assert lines[-1] == "summary: 59 pass, 0 fail, 5 skipped"
    assert len(lines) == 2 + len(report.results) + 1
    assert "contraction-circuit-containment [x=c] surplus={d}, {e}" in text
    assert text.endswith("\n")


def test_rendered_failure_shows_witness():
    report = SuiteReport(
        instance_digest="0" * 64,
        universe=["a", "b"],
        results=[
            CheckResult(
                check="rank-axioms",
                subject="dual",
                status="fail",
                violated="R3",
                witness=[["a"], []],
            )
        ],
    )
    text = render_report(report)
    assert "FAIL    rank-axioms [dual] violated=R3 witness={a}, ∅" in text
    assert not report.passed


def test_format_set():
    assert format_set([]) == "∅"
    assert format_set(["a", "c"]) == "{a c}"


def test_export_archive():
    p = _load("example2.json")
    report = verify_all(p)
    doc = partition_to_document(p)
    first = generate_report_export(report, doc).getvalue()
    second = generate_report_export(report, doc).getvalue()
    assert first == second

    with zipfile.ZipFile(io.BytesIO(first)) as archive:
        assert archive.namelist() == ["results.csv", "report.json", "instance.json", "README.txt"]
        rows = archive.read("results.csv").decode("utf-8").splitlines()
        assert rows[0] == "Check,Subject,Status,Violated,Witness,Skipped"
        assert len(rows) == 1 + len(report.results)
        saved = json.loads(archive.read("report.json"))
        assert saved["instance_digest"] == report.instance_digest
        instance = archive.read("instance.json").decode("utf-8")
        assert instance == (FIXTURES / "example2.json").read_text(encoding="utf-8")
        assert report.instance_digest in archive.read("README.txt").decode("utf-8")



def test_export_to_an_unwritable_path_is_an_input_error(tmp_path):
    p = _load("singleton.json")
    report = verify_all(p)
    target = tmp_path / "no-such-dir" / "out.zip"
    with pytest.raises(ExportPathError) as info:
        write_report_export(report, partition_to_document(p), target)
    assert info.value.exit_code == 2
    assert info.value.path == str(target)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
