"""Adding a mood operator multiplies the pluggings; the filter keeps the sensible ones.

With an assertion operator on top of "jeder termin geht" the operator could
in principle end up inside the quantifier's scope. filter_mood keeps only the
pluggings in which it outscopes everything else.
"""

from lud import (
    IdGenerator, enumerate_pluggings, filter_mood, fun_arg_apply, interpret,
    lex_intransitive, lex_noun, lex_universal, render_box, with_mood,
)

ids = IdGenerator()
np = fun_arg_apply(lex_universal(ids), lex_noun("termin", ids))
u = fun_arg_apply(lex_intransitive("gehen", "theme", ids), np)
u, mood = with_mood(u, "assert")

ps = enumerate_pluggings(u)
kept = filter_mood(u, mood, ps)
print(f"{len(ps)} pluggings, {len(kept)} with {mood} on top")
for p in ps:
    mark = "keep" if p in kept else "drop"
    print(f"[{mark}] {p}")
    print(render_box(interpret(u, p)))
