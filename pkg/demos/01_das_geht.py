"""Build "das geht" from its two lexical templates, then resolve and interpret it."""

from lud import (
    IdGenerator, enumerate_pluggings, free_labels, fun_arg_apply, interpret,
    lex_demonstrative, lex_intransitive, render_box, serialize_lud, top, well_formed,
)

ids = IdGenerator()
verb = lex_intransitive("gehen", "theme", ids)
pron = lex_demonstrative(ids)

print("verb template:")
print(serialize_lud(verb))
print("demonstrative template:")
print(serialize_lud(pron))

# the verb consumes its subject; the pronoun's parameters pick up the verb's labels
u = fun_arg_apply(verb, pron)
print("composed:")
print(serialize_lud(u))
assert well_formed(u) == []

print("top:", top(u))
print("free labels:", sorted(free_labels(u)))

[p] = enumerate_pluggings(u)
print("plugging:", p)
print(render_box(interpret(u, p)))
