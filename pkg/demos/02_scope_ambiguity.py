"""Two quantifiers, one representation, two readings.

"jeder kollege vereinbart einen termin" leaves the relative scope of the
universal and the indefinite open. Each admissible plugging fixes one order.
"""

from lud import (
    IdGenerator, brute_force_pluggings, enumerate_pluggings, fun_arg_apply, lex_indefinite,
    lex_noun, lex_transitive, lex_universal, readings, render_box, serialize_lud,
)

ids = IdGenerator()
verb = lex_transitive("vereinbaren", ["theme", "agent"], ids)
obj = fun_arg_apply(lex_indefinite(ids), lex_noun("termin", ids))
subj = fun_arg_apply(lex_universal(ids), lex_noun("kollege", ids))
u = fun_arg_apply(fun_arg_apply(verb, obj), subj)

print(serialize_lud(u))

ps = enumerate_pluggings(u)
assert ps == brute_force_pluggings(u)
for p, k in zip(ps, readings(u)):
    print("#", p)
    print(render_box(k))
    print()
