"""Corpus runner: every ``<id>.tfs`` is evaluated and its report text
compared with ``<id>.expected``."""

from __future__ import annotations

import difflib
import time
from dataclasses import dataclass
from pathlib import Path

from .evaluator import Options, Session, format_reports
from .parser import ScriptError


@dataclass
class CaseResult:
    case_id: str
    passed: bool
    seconds: float
    diff: str = ""
    error: str = ""
    anchor: str = ""


def case_anchor(text):
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("# anchor:"):
            return s[len("# anchor:"):].strip()
    return ""


def evaluate_case(text, options=None):
    """Output text of a case plus failed assertion messages."""
    sess = Session(options).run_text(text)
    failures = [f"line {a.line}: assert {a.text}: expected {a.expected!r}, got {a.actual!r}"
                for a in sess.assertions if not a.passed]
    return format_reports(sess.reports), failures


def run_case(script_path, options=None):
    case_id = script_path.stem
    exp_path = script_path.with_suffix(".expected")
    try:
        text = script_path.read_text(encoding="utf-8")
        expected = exp_path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise OSError(f"cannot read case {case_id}: {exc}") from exc
    t0 = time.perf_counter()
    try:
        actual, failures = evaluate_case(text, options)
    except ScriptError as exc:
        return CaseResult(case_id, False, time.perf_counter() - t0, error=f"{script_path.name}:{exc}",
                          anchor=case_anchor(text))
    dt = time.perf_counter() - t0
    diff = ""
    if actual != expected:
        diff = "".join(difflib.unified_diff(
            expected.splitlines(keepends=True), actual.splitlines(keepends=True),
            fromfile=f"{case_id}.expected", tofile=f"{case_id} (actual)"))
    return CaseResult(case_id, not diff and not failures, dt, diff, "\n".join(failures), case_anchor(text))


def run_corpus(directory, options=None, out=None, timing=False):
    """Run every case in ``directory``; returns (results, summary line)."""
    directory = Path(directory)
    if not directory.is_dir():
        raise OSError(f"not a directory: {directory}")
    results = [run_case(p, options) for p in sorted(directory.glob("*.tfs"))]
    passed = sum(r.passed for r in results)
    failed = len(results) - passed
    if out is not None:
        for r in results:
            out.write(f"{'PASS' if r.passed else 'FAIL'} {r.case_id}\n")
            if r.error:
                out.write(r.error + "\n")
            if r.diff:
                out.write(r.diff)
        if timing and results:
            width = max(len(r.case_id) for r in results)
            out.write("\n" + "case".ljust(width) + "  seconds\n")
            for r in results:
                out.write(r.case_id.ljust(width) + f"  {r.seconds:7.3f}\n")
    if not results:
        summary = "0 cases"
    else:
        summary = f"{len(results)} cases, {passed} passed, {failed} failed"
    if out is not None:
        out.write(summary + "\n")
    return results, summary


def bundled_corpus():
    return Path(__file__).resolve().parent.parent / "corpus"
