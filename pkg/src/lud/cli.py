"""Command-line front end: ``lud analyze|plug|interpret|check``.

Exit status is 0 on success, 1 when diagnostics were produced, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .composition import with_mood
from .drs import interpret, render_box
from .errors import LudError, LudSyntaxError
from .formats import (
    demo_grammar, demo_lexicon, parse_grammar_text, parse_lexicon_text,
    parse_lud_text, serialize_lud,
)
from .grammar import analyze, tokenize
from .model import Label, well_formed
from .plugging import brute_force_pluggings, enumerate_pluggings, filter_mood

OK, DIAGNOSTICS, USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None


def _load_lud(path: str, err):
    try:
        return parse_lud_text(_read(path))
    except LudSyntaxError as exc:
        for d in exc.diagnostics:
            print(f"{path}:{d}", file=err)
        return None


def cmd_analyze(args, out, err) -> int:
    grammar = parse_grammar_text(_read(args.grammar)) if args.grammar else demo_grammar()
    lexicon = parse_lexicon_text(_read(args.lexicon)) if args.lexicon else demo_lexicon()
    results = analyze(tokenize(args.sentence), grammar, lexicon)
    for d in results.diagnostics:
        print(d, file=err)
    if not results and not results.diagnostics:
        print(f"no-parse: no derivation spans {args.sentence!r}", file=err)
    for n, a in enumerate(results, 1):
        if n > 1:
            print(file=out)
        print(f"# derivation {n}: {a.derivation}", file=out)
        u = a.lud
        if args.mood:
            u, mood = with_mood(u, args.mood)
            print(f"# mood {mood}", file=out)
        out.write(serialize_lud(u))
    return OK if results else DIAGNOSTICS


def _pluggings(u, args, err):
    ps = brute_force_pluggings(u) if args.oracle else enumerate_pluggings(u)
    for d in ps.diagnostics:
        print(d, file=err)
    if ps.diagnostics:
        return None
    if args.mood:
        mood = Label(args.mood)
        if mood not in u.labels:
            print(f"unknown-label: {mood} does not name a condition", file=err)
            return None
        ps = filter_mood(u, mood, ps)
    return ps


def cmd_plug(args, out, err) -> int:
    u = _load_lud(args.file, err)
    if u is None:
        return DIAGNOSTICS
    ps = _pluggings(u, args, err)
    if ps is None:
        return DIAGNOSTICS
    for n, p in enumerate(ps, 1):
        print(f"{n}: {p}", file=out)
    return OK


def cmd_interpret(args, out, err) -> int:
    u = _load_lud(args.file, err)
    if u is None:
        return DIAGNOSTICS
    ps = _pluggings(u, args, err)
    if ps is None:
        return DIAGNOSTICS
    chosen = list(enumerate(ps, 1))
    if args.plugging is not None:
        if not 1 <= args.plugging <= len(ps):
            raise _Usage(f"--plugging must be between 1 and {len(ps)}")
        chosen = [chosen[args.plugging - 1]]
    try:
        boxes = [(n, p, render_box(interpret(u, p))) for n, p in chosen]
    except LudError as exc:
        print(f"{type(exc).__name__}: {exc}", file=err)
        return DIAGNOSTICS
    for i, (n, p, box) in enumerate(boxes):
        if i:
            print(file=out)
        print(f"# reading {n}: {p}", file=out)
        print(box, file=out)
    return OK


def cmd_check(args, out, err) -> int:
    u = _load_lud(args.file, err)
    if u is None:
        return DIAGNOSTICS
    diags = well_formed(u)
    for d in diags:
        print(d, file=out)
    if diags:
        return DIAGNOSTICS
    print("ok", file=out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lud", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="parse a sentence and print its LUD representations")
    p.add_argument("sentence")
    p.add_argument("--grammar", help="grammar file (default: bundled demo grammar)")
    p.add_argument("--lexicon", help="lexicon file (default: bundled demo lexicon)")
    p.add_argument("--mood", metavar="REL", help="decorate each result with a mood operator")
    p.set_defaults(func=cmd_analyze)

    for name, func, helptext in (
        ("plug", cmd_plug, "list the admissible pluggings of a LUD document"),
        ("interpret", cmd_interpret, "print the DRS of each reading of a LUD document"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.add_argument("--mood", metavar="LABEL", help="keep only pluggings where LABEL outscopes the rest")
        p.add_argument("--oracle", action="store_true", help="enumerate by brute force")
        if name == "interpret":
            p.add_argument("--plugging", type=int, metavar="N", help="only the N-th reading (1-based)")
        p.set_defaults(func=func)

    p = sub.add_parser("check", help="report well-formedness problems of a LUD document")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    try:
        return args.func(args, out, err)
    except _Usage as exc:
        print(f"lud: error: {exc}", file=err)
        return USAGE
    except LudSyntaxError as exc:
        for d in exc.diagnostics:
            print(d, file=err)
        return DIAGNOSTICS


if __name__ == "__main__":
    sys.exit(main())
