"""From text to readings with the bundled grammar and lexicon.

A custom grammar can be loaded with parse_grammar_text; here one extra rule
lets bare nouns act as noun phrases, which the semantics then rejects.
"""

from lud import (
    analyze, demo_corpus, demo_grammar, demo_lexicon, enumerate_pluggings,
    parse, parse_grammar_text, tokenize,
)

grammar, lexicon = demo_grammar(), demo_lexicon()

for sentence in demo_corpus():
    for a in analyze(tokenize(sentence), grammar, lexicon):
        n = len(enumerate_pluggings(a.lud))
        print(f"{sentence:45} {n} reading(s)  {a.derivation}")

# agreement failure: no parse and nothing to report
print(parse(tokenize("das gehen"), grammar, lexicon))

# unknown words
print(parse(tokenize("das fliegt"), grammar, lexicon).diagnostics)

# syntactically fine, semantically rejected
loose = grammar + parse_grammar_text("np -> n | 0:agr = 1:agr | pass(1)\n")
print(len(parse(tokenize("termin geht"), loose, lexicon)), "parse")
result = analyze(tokenize("termin geht"), loose, lexicon)
print(len(result), "analyses;", [str(d) for d in result.diagnostics])
