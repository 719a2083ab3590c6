"""
Trial metrics for code-generation attempts.

Each component is scored on four parameters: correct on the first
iteration (0/1), errors embedded in the code (summed over iterations),
trials needed to reach correct code, and failure after three iterations (0/1).

Log format, one record per line, `#` comments allowed:

    <component> <trial_index> <error_count> <passed>

`passed` is one of 1/0, yes/no, true/false, pass/fail.
"""

import csv
import io
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from ..core.errors import InconsistentLog
from ..utils.text import strip_comment

logger = logging.getLogger(__name__)

FAILURE_TRIAL_LIMIT = 3

CSV_HEADER = ("component", "correct_first", "total_errors", "trials_to_correct", "failed_after_three")

_TRUE = {"1", "yes", "true", "pass", "passed"}
_FALSE = {"0", "no", "false", "fail", "failed"}


@dataclass(frozen=True)
class TrialRecord:
    component: str
    trial_index: int
    error_count: int
    passed: bool


@dataclass(frozen=True)
class MetricRow:
    component: str
    correct_first_iteration: int
    total_errors: int
    trials_to_correct: int | None
    failed_after_three: int


def parse_log(text: str) -> list[TrialRecord]:
    records: list[TrialRecord] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line:
            continue
        fields = line.split()
        if len(fields) != 4:
            raise InconsistentLog(f"line {lineno}: expected 4 fields, got {len(fields)}")
        component, index_text, errors_text, passed_text = fields
        try:
            trial_index = int(index_text)
            error_count = int(errors_text)
        except ValueError:
            raise InconsistentLog(f"line {lineno}: trial index and error count must be integers")
        flag = passed_text.lower()
        if flag not in _TRUE and flag not in _FALSE:
            raise InconsistentLog(f"line {lineno}: bad passed flag {passed_text!r}")
        records.append(TrialRecord(component, trial_index, error_count, flag in _TRUE))
    return records


def read_log(path: str | Path) -> list[TrialRecord]:
    records = parse_log(Path(path).read_text(encoding="utf-8"))
    logger.info(f"Read {len(records)} trial records from {path}")
    return records


def _summarize_component(component: str, trials: list[TrialRecord]) -> MetricRow:
    trials = sorted(trials, key=lambda r: r.trial_index)
    seen: set[int] = set()
    for r in trials:
        if r.trial_index < 1:
            raise InconsistentLog(f"{component}: trial index {r.trial_index} must be >= 1")
        if r.error_count < 0:
            raise InconsistentLog(f"{component}: negative error count in trial {r.trial_index}")
        if r.trial_index in seen:
            raise InconsistentLog(f"{component}: duplicate trial index {r.trial_index}")
        seen.add(r.trial_index)

    passing = [r for r in trials if r.passed]
    if len(passing) > 1 or (passing and passing[0] is not trials[-1]):
        raise InconsistentLog(f"{component}: trials recorded after the passing trial {passing[0].trial_index}")

    trials_to_correct = passing[0].trial_index if passing else None
    return MetricRow(
        component=component,
        correct_first_iteration=int(trials_to_correct == 1),
        total_errors=sum(r.error_count for r in trials),
        trials_to_correct=trials_to_correct,
        failed_after_three=int(trials_to_correct is None or trials_to_correct > FAILURE_TRIAL_LIMIT),
    )


def summarize(records: Iterable[TrialRecord]) -> list[MetricRow]:
    """
    One MetricRow per component, sorted by component name.

    Raises:
        InconsistentLog: duplicate trial index, trials after a pass, bad counts
    """
    grouped: dict[str, list[TrialRecord]] = {}
    for r in records:
        grouped.setdefault(r.component, []).append(r)
    return [_summarize_component(name, grouped[name]) for name in sorted(grouped)]


def _cells(row: MetricRow) -> tuple[str, ...]:
    trials = "-" if row.trials_to_correct is None else str(row.trials_to_correct)
    return (
        row.component,
        str(row.correct_first_iteration),
        str(row.total_errors),
        trials,
        str(row.failed_after_three),
    )


def render(rows: Iterable[MetricRow], fmt: str = "table") -> str:
    """Render rows as `csv` or an aligned text `table`, sorted by component."""
    ordered = sorted(rows, key=lambda r: r.component)
    body = [_cells(r) for r in ordered]

    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(body)
        return out.getvalue()

    if fmt != "table":
        raise ValueError(f"unknown format {fmt!r}")
    table = [CSV_HEADER, *body]
    widths = [max(len(row[i]) for row in table) for i in range(len(CSV_HEADER))]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() for row in table]
    return "\n".join(lines) + "\n"
