import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lud import (  # noqa: E402
    Conj, Context, Dm, Hole, IdGenerator, Label, Leq, LudRepr, Marker, Pred, Presup,
    fun_arg_apply, lex_indefinite, lex_intransitive, lex_noun, lex_transitive,
    lex_universal,
)

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

h0 = Hole("h0")
l4, l5, l6, l7 = Label("l4"), Label("l5"), Label("l6"), Label("l7")
z = Marker("z", "entity")
e = Marker("e", "event")


def reference_das_geht() -> LudRepr:
    """The composed "das geht" representation with hand-picked identifiers."""
    return LudRepr(
        holes={h0},
        conditions={
            l4: Dm(z),
            l5: Pred("gehen", (e,)),
            l6: Pred("theme", (e, z)),
            l7: Conj(l5, l6),
        },
        constraints={Leq(l7, h0), Presup(l4, l7)},
        context=Context(e, l7, h0),
    )


def jeder_termin_geht(ids=None) -> LudRepr:
    ids = ids or IdGenerator()
    np = fun_arg_apply(lex_universal(ids), lex_noun("termin", ids))
    return fun_arg_apply(lex_intransitive("gehen", "theme", ids), np)


def two_quantifiers(ids=None) -> LudRepr:
    """jeder kollege vereinbart einen termin"""
    ids = ids or IdGenerator()
    verb = lex_transitive("vereinbaren", ["theme", "agent"], ids)
    obj = fun_arg_apply(lex_indefinite(ids), lex_noun("termin", ids))
    subj = fun_arg_apply(lex_universal(ids), lex_noun("kollege", ids))
    return fun_arg_apply(fun_arg_apply(verb, obj), subj)


@pytest.fixture
def das_geht():
    return reference_das_geht()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
