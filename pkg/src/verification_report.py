"""
Verification Report
Check records, suite reports and their JSON / markdown renderings.

JSON schema ("s5xs5-certificate/1"):
    {
      "schema": "s5xs5-certificate/1",
      "suite": str,
      "status": "certified" | "failed",
      "config": {...},
      "notes": [str, ...],
      "checks": [
        {"check_id": str, "anchor": str, "status": "certified" | "failed" | "skipped",
         "witness": {...}, "timing_ns": int | null, "notes": [str, ...]},
        ...
      ]
    }
Checks are ordered by check_id. Rationals and cyclotomic numbers are written
as strings so the file stays exact.
"""

import json
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

LOGGER = logging.getLogger(__name__)

SCHEMA = "s5xs5-certificate/1"

# pointer to the newest JSON report, relative to the working directory
LAST_REPORT_FILE = ".certifier_last_report"

CERTIFIED = "certified"
FAILED = "failed"
SKIPPED = "skipped"
STATUSES = (CERTIFIED, FAILED, SKIPPED)


class ReportWriteError(OSError):
    """The report could not be written to the requested path."""


def to_jsonable(value):
    """
    Convert witness data into JSON-safe values.

    Fractions and anything with an exact string form (CycloNumber, UMatrix,
    SpherePoly, group elements) become strings; numpy scalars become floats.
    """
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(f"{float(value):.12g}")
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in value]
        if isinstance(value, (set, frozenset)):
            items.sort(key=str)
        return items
    return str(value)


@dataclass
class CheckResult:
    """Outcome of one certification check."""

    check_id: str
    anchor: str
    status: str
    witness: dict = field(default_factory=dict)
    timing_ns: int = None
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"Unknown check status {self.status!r}")

    @property
    def certified(self):
        return self.status == CERTIFIED

    @classmethod
    def from_outcome(cls, check_id, anchor, passed, witness=None, notes=None):
        return cls(
            check_id=check_id,
            anchor=anchor,
            status=CERTIFIED if passed else FAILED,
            witness=witness or {},
            notes=list(notes or []),
        )

    def to_dict(self):
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "status": self.status,
            "witness": to_jsonable(self.witness),
            "timing_ns": self.timing_ns,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            check_id=data["check_id"],
            anchor=data["anchor"],
            status=data["status"],
            witness=data.get("witness", {}),
            timing_ns=data.get("timing_ns"),
            notes=list(data.get("notes", [])),
        )


def run_timed(check, record_timing=False):
    """Run a zero-argument check callable and attach its duration when asked."""
    start = time.perf_counter_ns()
    result = check()
    if record_timing:
        result.timing_ns = time.perf_counter_ns() - start
    return result


@dataclass
class Report:
    """Suite-level report aggregating check records."""

    suite: str
    checks: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def status(self):
        active = [c for c in self.checks if c.status != SKIPPED]
        return CERTIFIED if all(c.certified for c in active) else FAILED

    @property
    def certified(self):
        return self.status == CERTIFIED

    def add(self, result):
        self.checks.append(result)

    def failed_checks(self):
        return [c for c in self.sorted_checks() if c.status == FAILED]

    def sorted_checks(self):
        return sorted(self.checks, key=lambda c: c.check_id)

    def counts(self):
        return {s: sum(1 for c in self.checks if c.status == s) for s in STATUSES}

    def to_dict(self):
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "status": self.status,
            "config": to_jsonable(self.config),
            "notes": list(self.notes),
            "checks": [c.to_dict() for c in self.sorted_checks()],
        }

    @classmethod
    def from_dict(cls, data):
        if data.get("schema") != SCHEMA:
            raise ValueError(f"Unsupported report schema {data.get('schema')!r}")
        return cls(
            suite=data["suite"],
            checks=[CheckResult.from_dict(c) for c in data.get("checks", [])],
            config=data.get("config", {}),
            notes=list(data.get("notes", [])),
        )

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_markdown(self):
        counts = self.counts()
        lines = [
            f"# Certification report: {self.suite}",
            "",
            f"**Status:** {self.status}  ",
            f"**Checks:** {counts[CERTIFIED]} certified, {counts[FAILED]} failed, "
            f"{counts[SKIPPED]} skipped",
            "",
            "| check | status | anchor |",
            "|---|---|---|",
        ]
        for check in self.sorted_checks():
            anchor = check.anchor.replace("|", "\\|")
            lines.append(f"| `{check.check_id}` | {check.status} | {anchor} |")

        failed = self.failed_checks()
        if failed:
            lines += ["", "## Failed checks"]
            for check in failed:
                lines += [
                    "",
                    f"### {check.check_id}",
                    "",
                    "```json",
                    json.dumps(to_jsonable(check.witness), indent=2, sort_keys=True),
                    "```",
                ]

        notes = list(self.notes) + [n for c in self.sorted_checks() for n in c.notes]
        if notes:
            lines += ["", "## Notes", ""]
            lines += [f"- {note}" for note in dict.fromkeys(notes)]
        return "\n".join(lines) + "\n"


def emit_report(report, fmt="json", path=None):
    """
    Render a report and write it to ``path``.

    Args:
        report: Report instance
        fmt: 'json' or 'markdown'
        path: Destination file; parent directories are created

    Returns:
        Path of the written file
    """
    if fmt == "json":
        text = report.to_json()
    elif fmt == "markdown":
        text = report.to_markdown()
    else:
        raise ValueError(f"Unknown report format {fmt!r}")

    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ReportWriteError(f"Cannot write report to {target}: {exc}") from exc
    LOGGER.info("Wrote %s report for suite %s to %s", fmt, report.suite, target)
    return target


def load_report(path):
    with open(path, "r", encoding="utf-8") as f:
        return Report.from_dict(json.load(f))


def remember_report(path, pointer=LAST_REPORT_FILE):
    """Record ``path`` as the newest JSON report."""
    try:
        Path(pointer).write_text(str(Path(path).resolve()), encoding="utf-8")
    except OSError as exc:
        LOGGER.warning("Could not record the last report path in %s: %s", pointer, exc)


def last_report(pointer=LAST_REPORT_FILE):
    """Path of the newest JSON report written from this directory."""
    try:
        return Path(Path(pointer).read_text(encoding="utf-8").strip())
    except FileNotFoundError as exc:
        raise FileNotFoundError(
            "No saved report given with --from and no JSON report has been written here yet"
        ) from exc
