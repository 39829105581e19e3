"""Command line entry point: ``tracforge run|corpus|repl``."""

from __future__ import annotations

import argparse
import sys

from ..polycore import GREVLEX, LEX, Field
from .corpus import bundled_corpus, run_corpus
from .evaluator import Options, Session, format_reports
from .parser import Parser, ScriptError

EXIT_OK, EXIT_ASSERT, EXIT_USAGE = 0, 1, 2


def parse_field(text):
    t = text.strip().lower()
    if t == "qq":
        return Field(0)
    if t.startswith("gf:"):
        try:
            return Field(int(t[3:]))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    raise argparse.ArgumentTypeError("expected gf:P or qq")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=parse_field, default=None,
                        help="default coefficient field for rings that omit one (gf:P or qq)")
    common.add_argument("--order", choices=["grevlex", "lex"], default=None,
                        help="default monomial order for rings that omit one")
    common.add_argument("--timing", action="store_true", help="report timings")
    ap = argparse.ArgumentParser(prog="tracforge", description="Trace ideals and module closures.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", parents=[common], help="evaluate a .tfs script")
    run.add_argument("script")
    cor = sub.add_parser("corpus", parents=[common], help="run a directory of cases")
    cor.add_argument("directory", nargs="?", default=None)
    sub.add_parser("repl", parents=[common], help="interactive session")
    return ap


def _options(args):
    opts = Options(timing=args.timing)
    if args.field is not None:
        opts.field = args.field
    if args.order is not None:
        opts.order = LEX if args.order == "lex" else GREVLEX
    return opts


def cmd_run(args, out, err):
    try:
        with open(args.script, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    sess = Session(_options(args))
    try:
        sess.run_text(text)
    except ScriptError as exc:
        if sess.reports:
            out.write(format_reports(sess.reports))
        err.write(f"{args.script}:{exc}\n")
        return EXIT_USAGE
    out.write(format_reports(sess.reports))
    if args.timing:
        for line, dt in sess.timings:
            err.write(f"line {line}: {dt:.3f}s\n")
    bad = [a for a in sess.assertions if not a.passed]
    for a in bad:
        err.write(f"{args.script}:{a.line}: assertion failed: {a.text}\n"
                  f"  expected: {a.expected}\n  actual:   {a.actual}\n")
    return EXIT_ASSERT if bad else EXIT_OK


def cmd_corpus(args, out, err):
    directory = args.directory or bundled_corpus()
    try:
        results, _ = run_corpus(directory, _options(args), out=out, timing=args.timing)
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK if all(r.passed for r in results) else EXIT_ASSERT


def cmd_repl(args, inp, out, err):
    sess = Session(_options(args))
    buf = ""
    status = EXIT_OK
    interactive = inp.isatty()
    while True:
        if interactive:
            out.write("... " if buf else "tf> ")
            out.flush()
        line = inp.readline()
        if not line:
            break
        buf += line
        if ";" not in line:
            continue
        try:
            stmts = Parser(buf).script().statements
        except ScriptError as exc:
            if "end of input" in exc.message:
                continue
            err.write(f"{exc}\n")
            buf = ""
            status = EXIT_USAGE
            continue
        buf = ""
        for s in stmts:
            try:
                sess.checker.statement(s)
                res = sess.execute(s)
            except ScriptError as exc:
                err.write(f"{exc}\n")
                status = EXIT_USAGE
                break
            if res is not None and hasattr(res, "to_text"):
                out.write(res.to_text())
            elif res is not None and hasattr(res, "passed") and not res.passed:
                err.write(f"assertion failed: {res.text}\n  expected: {res.expected}\n  actual:   {res.actual}\n")
                status = max(status, EXIT_ASSERT) if status != EXIT_USAGE else status
            out.flush()
    return status


def main(argv=None, inp=None, out=None, err=None):
    inp = inp or sys.stdin
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.command == "run":
        return cmd_run(args, out, err)
    if args.command == "corpus":
        return cmd_corpus(args, out, err)
    return cmd_repl(args, inp, out, err)


if __name__ == "__main__":
    sys.exit(main())
