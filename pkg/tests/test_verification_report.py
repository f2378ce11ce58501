import json
from fractions import Fraction

import numpy as np
import pytest

from cyclotomic import OMEGA
from verification_report import (
    CERTIFIED,
    FAILED,
    SCHEMA,
    SKIPPED,
    CheckResult,
    Report,
    ReportWriteError,
    emit_report,
    last_report,
    load_report,
    remember_report,
    run_timed,
    to_jsonable,
)


def _report():
    report = Report("demo", config={"epsilon": Fraction(49, 625)}, notes=["demo note"])
    report.add(CheckResult.from_outcome("b.second", "anchor two", True, {"count": 3}))
    report.add(CheckResult.from_outcome(
        "a.first", "anchor | one", False, {"residual": ["(1,1): zb1*z2"], "value": OMEGA},
        ["a check note"],
    ))
    return report


def test_empty_report_is_certified():
    report = Report("empty")
    assert report.certified
    assert report.counts() == {CERTIFIED: 0, FAILED: 0, SKIPPED: 0}


def test_skipped_checks_do_not_fail_a_report():
    report = Report("s", [CheckResult("x", "", SKIPPED)])
    assert report.status == CERTIFIED


def test_unknown_status_rejected():
    with pytest.raises(ValueError):
        CheckResult("x", "", "maybe")


def test_checks_are_sorted_and_status_aggregates():
    report = _report()
    assert [c.check_id for c in report.sorted_checks()] == ["a.first", "b.second"]
    assert report.status == FAILED
    assert [c.check_id for c in report.failed_checks()] == ["a.first"]


def test_json_document_layout():
    data = json.loads(_report().to_json())
    assert data["schema"] == SCHEMA
    assert data["status"] == "failed"
    assert data["config"] == {"epsilon": "49/625"}
    first = data["checks"][0]
    assert first["witness"]["value"] == str(OMEGA)
    assert first["timing_ns"] is None


def test_json_rendering_is_deterministic():
    assert _report().to_json() == _report().to_json()


def test_json_roundtrip(tmp_path):
    path = emit_report(_report(), "json", tmp_path / "nested" / "report.json")
    loaded = load_report(path)
    assert loaded.to_json() == _report().to_json()


def test_load_rejects_foreign_schema(tmp_path):
    path = tmp_path / "other.json"
    path.write_text(json.dumps({"schema": "other/1", "suite": "x"}), encoding="utf-8")
    with pytest.raises(ValueError):
        load_report(path)


def test_markdown_shows_failed_witness_and_notes():
    text = _report().to_markdown()
    assert text.startswith("# Certification report: demo")
    assert "**Status:** failed" in text
    assert "### a.first" in text
    assert "(1,1): zb1*z2" in text
    assert "anchor \\| one" in text
    assert "- demo note" in text
    assert "- a check note" in text


def test_unknown_format_and_unwritable_path(tmp_path):
    with pytest.raises(ValueError):
        emit_report(_report(), "yaml", tmp_path / "r.yaml")
    blocker = tmp_path / "file"
    blocker.write_text("", encoding="utf-8")
    with pytest.raises(ReportWriteError):
        emit_report(_report(), "json", blocker / "report.json")


def test_timing_is_opt_in():
    check = lambda: CheckResult.from_outcome("t", "", True)  # noqa: E731
    assert run_timed(check).timing_ns is None
    assert run_timed(check, record_timing=True).timing_ns >= 0


def test_to_jsonable_conversions():
    assert to_jsonable({1: {Fraction(1, 3), Fraction(1, 2)}}) == {"1": ["1/2", "1/3"]}
    assert to_jsonable(np.int64(4)) == 4
    assert to_jsonable(np.float64(0.1) + np.float64(0.2)) == 0.3
    assert to_jsonable((None, True)) == [None, True]


def test_last_report_pointer(tmp_path):
    pointer = tmp_path / "last"
    with pytest.raises(FileNotFoundError):
        last_report(pointer)
    path = emit_report(_report(), "json", tmp_path / "r.json")
    remember_report(path, pointer)
    assert last_report(pointer) == path.resolve()
    assert load_report(last_report(pointer)).suite == "demo"
