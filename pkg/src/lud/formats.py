"""
Line-oriented text formats: LUD documents, grammars and lexicons.

LUD documents (``.lud``), one declaration per line, emitted in this order::

    hole h0
    marker e event
    marker z entity
    l4: dm(z)
    l5: gehen(e)
    l6: theme(e,z)
    l7: and(l5,l6)
    leq l7 h0
    presup l4 l7
    context e l7 h0
    subcat [(?X1,l7,h0)]

Conditions are ``dm(m)``, ``rel(m1,...,mn)``, ``not(r)``, ``imp(r,r)``,
``and(r,r)`` and ``or(r,r)``; ``dm``, ``not``, ``imp``, ``and`` and ``or``
are therefore not available as relation names. Parameters are written
``?name``; an anonymous context slot is ``_``. The subcat line is omitted
when the list is empty. Blank lines and lines starting with ``#`` are
ignored on input.
"""

from __future__ import annotations

import re
from importlib import resources

from .composition import LexEntry
from .errors import LudSyntaxError
from .grammar import ACTIONS, GrammarRule
from .model import (
    Conj, Context, Diagnostic, Disj, Dm, Hole, Imp, Label, Leq, Lt, LudRepr,
    Marker, Neg, Param, Pred, Presup,
)

__all__ = [
    "serialize_lud", "parse_lud_text", "parse_grammar_text", "parse_lexicon_text",
    "serialize_grammar", "serialize_lexicon", "demo_grammar", "demo_lexicon",
    "demo_corpus", "RESERVED",
]

RESERVED = {"dm": Dm, "not": Neg, "imp": Imp, "and": Conj, "or": Disj}
_TAG = {Neg: "not", Imp: "imp", Conj: "and", Disj: "or"}
_CONSTRAINTS = {"leq": Leq, "lt": Lt, "presup": Presup}
_KEYWORD = {Leq: "leq", Lt: "lt", Presup: "presup"}


def _ref(x) -> str:
    return "_" if x is None else str(x)


def _cond_text(cond) -> str:
    if isinstance(cond, Dm):
        return f"dm({cond.x})"
    if isinstance(cond, Pred):
        return f"{cond.rel}({','.join(str(a) for a in cond.args)})"
    return f"{_TAG[type(cond)]}({','.join(str(r) for r in cond.refs)})"


def serialize_lud(u: LudRepr) -> str:
    """Deterministic text form of ``u`` (see module docstring)."""
    lines = [f"hole {h}" for h in sorted(u.holes)]
    lines += [f"marker {m} {m.kind}" for m in sorted(u.markers)]
    lines += [f"{lab}: {_cond_text(cond)}" for lab, cond in u.conditions]
    lines += [f"{_KEYWORD[type(c)]} {c.operands[0]} {c.operands[1]}" for c in u.sorted_constraints()]
    lines.append("context " + " ".join(_ref(v) for v in u.context))
    if u.subcat:
        triples = ",".join("(" + ",".join(_ref(v) for v in ctx) + ")" for ctx in u.subcat)
        lines.append(f"subcat [{triples}]")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parsing LUD documents

_IDENT = r"\??[\w']+"
_COND = re.compile(r"^(\w+)\s*\((.*)\)\s*$")
_TRIPLE = re.compile(r"\(\s*([^(),\s]+)\s*,\s*([^(),\s]+)\s*,\s*([^(),\s]+)\s*\)")


class _Reader:
    def __init__(self, text: str):
        self.diags = []
        self.lines = []
        for n, raw in enumerate(text.splitlines(), 1):
            s = raw.strip()
            if s and not s.startswith("#"):
                self.lines.append((n, raw.index(s[0]) + 1, s))

    def error(self, line, col, code, message, subject=None):
        self.diags.append(Diagnostic(code, subject, message, line, col))


def _at(text: str, col: int, tok: str) -> int:
    # column of the whole-word occurrence of tok in a line starting at col
    m = re.search(rf"(?<![\w?']){re.escape(tok)}(?![\w'])", text)
    return col + m.start() if m else col


def _split_args(body: str) -> list:
    body = body.strip()
    return [a.strip() for a in body.split(",")] if body else []


def parse_lud_text(text: str) -> LudRepr:
    """Parse a LUD document. Raises LudSyntaxError with positioned diagnostics."""
    r = _Reader(text)
    holes, markers, labels = {}, {}, set()
    param_sort = {}
    cond_lines, constr_lines, ctx_lines, subcat_lines = [], [], [], []

    def note_param(tok, sort, line, col):
        if tok.startswith("?"):
            name = tok[1:]
            prev = param_sort.setdefault(name, sort)
            if prev != sort:
                r.error(line, col, "param-sort", f"?{name} used as {prev} and as {sort}", tok)

    # first pass: declarations and parameter sorts
    for line, col, s in r.lines:
        head, _, rest = s.partition(" ")
        rest = rest.strip()
        if head == "hole":
            if not re.fullmatch(r"[\w']+", rest):
                r.error(line, col, "syntax", "hole expects one identifier")
            else:
                holes[rest] = Hole(rest)
        elif head == "marker":
            parts = rest.split()
            if len(parts) != 2 or parts[1] not in ("entity", "event"):
                r.error(line, col, "syntax", "marker expects an identifier and entity|event")
            else:
                markers[parts[0]] = Marker(parts[0], parts[1])
        elif head in _CONSTRAINTS:
            constr_lines.append((line, col, s, head, rest.split()))
        elif head == "context":
            ctx_lines.append((line, col, s, rest.split()))
        elif head == "subcat":
            subcat_lines.append((line, col, s, rest))
        elif ":" in s:
            lab, _, body = s.partition(":")
            lab = lab.strip()
            if not re.fullmatch(r"[\w']+", lab):
                r.error(line, col, "syntax", f"bad label {lab!r}")
                continue
            labels.add(lab)
            cond_lines.append((line, col, s, lab, body.strip()))
        else:
            r.error(line, col, "syntax", f"unrecognised line {s!r}")

    def triple_sorts(toks, line, col):
        for tok, sort in zip(toks, ("marker", "label", "hole")):
            note_param(tok, sort, line, col)

    contexts = []
    for line, col, text, toks in ctx_lines:
        if len(toks) != 3:
            r.error(line, col, "syntax", "context expects instance, main label and top hole")
            continue
        triple_sorts(toks, line, col)
        contexts.append((line, col, text, toks))
    subcats = []
    for line, col, _, rest in subcat_lines:
        inner = rest.strip()
        if not (inner.startswith("[") and inner.endswith("]")):
            r.error(line, col, "syntax", "subcat expects [(i,m,t),...]")
            continue
        body = inner[1:-1].strip()
        triples = _TRIPLE.findall(body)
        if _TRIPLE.sub("", body).replace(",", "").strip():
            r.error(line, col, "syntax", "subcat expects [(i,m,t),...]")
            continue
        for t in triples:
            triple_sorts(t, line, col)
        subcats.append(triples)

    def marker_ref(tok, line, col):
        if tok.startswith("?"):
            note_param(tok, "marker", line, col)
            return Param(tok[1:], "marker")
        if tok in markers:
            return markers[tok]
        r.error(line, col, "unknown-identifier", f"undeclared marker {tok!r}", tok)
        return None

    def node_ref(tok, line, col, default_sort="label"):
        if tok.startswith("?"):
            return Param(tok[1:], param_sort.get(tok[1:], default_sort))
        if tok in holes:
            return Hole(tok)
        if tok in labels:
            return Label(tok)
        r.error(line, col, "unknown-identifier", f"unknown label or hole {tok!r}", tok)
        return None

    def slot(tok, kind, line, col, text):
        if tok == "_":
            return None
        col = _at(text, col, tok)
        if kind == "instance":
            return marker_ref(tok, line, col)
        return node_ref(tok, line, col, "label" if kind == "main" else "hole")

    conditions = []
    for line, col, text, lab, body in cond_lines:
        m = _COND.match(body)
        if not m:
            r.error(line, col, "syntax", f"malformed condition {body!r}")
            continue
        rel, args = m.group(1), _split_args(m.group(2))
        if not all(re.fullmatch(_IDENT, a) for a in args):
            r.error(line, col, "syntax", f"malformed argument list in {body!r}")
            continue
        if rel in RESERVED:
            want = {"dm": 1, "not": 1}.get(rel, 2)
            if len(args) != want:
                r.error(line, col, "arity", f"{rel} takes {want} argument(s), got {len(args)}")
                continue
            if rel == "dm":
                x = marker_ref(args[0], line, _at(text, col, args[0]))
                if x is not None:
                    conditions.append((Label(lab), Dm(x)))
                continue
            refs = [node_ref(a, line, _at(text, col, a)) for a in args]
            if None not in refs:
                conditions.append((Label(lab), RESERVED[rel](*refs)))
        else:
            if not args:
                r.error(line, col, "arity", f"{rel} needs at least one argument")
                continue
            xs = [marker_ref(a, line, _at(text, col, a)) for a in args]
            if None not in xs:
                conditions.append((Label(lab), Pred(rel, tuple(xs))))

    constraints = set()
    for line, col, text, head, toks in constr_lines:
        if len(toks) != 2:
            r.error(line, col, "syntax", f"{head} expects two operands")
            continue
        a, b = toks
        if head == "leq":
            if a in holes or (b in labels and b not in holes):
                r.error(line, col, "leq-order", "leq expects label then hole")
                continue
            left = node_ref(a, line, _at(text, col, a), "label")
            right = node_ref(b, line, _at(text, col, b), "hole")
        else:
            if a in holes or b in holes:
                r.error(line, col, "operand-not-label", f"{head} relates labels only")
                continue
            left, right = node_ref(a, line, _at(text, col, a)), node_ref(b, line, _at(text, col, b))
        if left is not None and right is not None:
            constraints.add(_CONSTRAINTS[head](left, right))

    context = None
    if not contexts:
        r.error(1, 1, "missing-context", "missing context")
    elif len(contexts) > 1:
        r.error(contexts[1][0], contexts[1][1], "syntax", "more than one context line")
    else:
        line, col, text, toks = contexts[0]
        context = Context(*(slot(t, k, line, col, text) for t, k in zip(toks, ("instance", "main", "top"))))

    subcat = []
    if len(subcat_lines) > 1:
        r.error(subcat_lines[1][0], subcat_lines[1][1], "syntax", "more than one subcat line")
    for (line, col, text, _), triples in zip(subcat_lines, subcats):
        for t in triples:
            subcat.append(Context(*(slot(tok, k, line, col, text) for tok, k in zip(t, ("instance", "main", "top")))))

    if r.diags:
        raise LudSyntaxError(sorted(r.diags, key=lambda d: (d.line or 0, d.column or 0)))
    return LudRepr(holes=frozenset(holes.values()), conditions=conditions,
                   constraints=constraints, context=context, subcat=subcat)


# ---------------------------------------------------------------------------
# grammars and lexicons

_PATH = re.compile(r"^(\d+):(\w+)$")
_ACTION = re.compile(r"^(\w+)\s*\(([\d\s,]*)\)$")


def parse_grammar_text(text: str) -> list[GrammarRule]:
    """Parse ``lhs -> rhs... | equations | action`` lines.

    Equations are comma separated, each ``i:attr = j:attr`` or
    ``i:attr = value``; index 0 is the mother. The action is
    ``fun_arg(f, a)``, ``merge(h, o)`` or ``pass(i)``.
    """
    r = _Reader(text)
    rules = []
    for line, col, s in r.lines:
        parts = [p.strip() for p in s.split("|")]
        if len(parts) != 3 or "->" not in parts[0]:
            r.error(line, col, "syntax", "expected 'lhs -> rhs | equations | action'")
            continue
        lhs, _, rhs = parts[0].partition("->")
        lhs, rhs = lhs.strip(), rhs.split()
        eqs = []
        ok = True
        for eq in filter(None, (e.strip() for e in parts[1].split(","))):
            left, _, right = (x.strip() for x in eq.partition("="))
            lm, rm = _PATH.match(left), _PATH.match(right)
            if not lm or not right:
                r.error(line, col, "syntax", f"bad equation {eq!r}")
                ok = False
                continue
            rhs_val = (int(rm.group(1)), rm.group(2)) if rm else right
            eqs.append(((int(lm.group(1)), lm.group(2)), rhs_val))
        am = _ACTION.match(parts[2])
        if not am or am.group(1) not in ACTIONS:
            r.error(line, col, "syntax", f"bad semantic action {parts[2]!r}")
            continue
        action = (am.group(1), *(int(x) for x in am.group(2).replace(",", " ").split()))
        if not ok:
            continue
        try:
            rules.append(GrammarRule(lhs, tuple(rhs), tuple(eqs), action))
        except ValueError as exc:
            r.error(line, col, "syntax", str(exc))
    if r.diags:
        raise LudSyntaxError(r.diags)
    return rules


def _path_text(p) -> str:
    return f"{p[0]}:{p[1]}"


def serialize_grammar(rules) -> str:
    out = []
    for rule in rules:
        eqs = ", ".join(f"{_path_text(a)} = {_path_text(b) if isinstance(b, tuple) else b}"
                        for a, b in rule.equations)
        kind, *idx = rule.action
        out.append(f"{rule} | {eqs} | {kind}({', '.join(str(i) for i in idx)})")
    return "\n".join(out) + "\n"


def parse_lexicon_text(text: str) -> list[LexEntry]:
    """Parse ``form category [attr=value ...] macro [arg ...]`` lines."""
    r = _Reader(text)
    entries = []
    for line, col, s in r.lines:
        toks = s.split()
        if len(toks) < 3:
            r.error(line, col, "syntax", "expected form, category and macro")
            continue
        form, cat, rest = toks[0], toks[1], toks[2:]
        feats = {}
        while rest and "=" in rest[0]:
            k, _, v = rest.pop(0).partition("=")
            feats[k] = v
        if not rest:
            r.error(line, col, "syntax", "missing semantic macro")
            continue
        try:
            entries.append(LexEntry(form, cat, rest[0], tuple(rest[1:]), feats))
        except ValueError as exc:
            r.error(line, col, "syntax", str(exc))
    if r.diags:
        raise LudSyntaxError(r.diags)
    return entries


def serialize_lexicon(entries) -> str:
    out = []
    for e in entries:
        feats = " ".join(f"{k}={v}" for k, v in sorted(e.features.items()))
        out.append(" ".join(filter(None, [e.form, e.category, feats, e.macro, *e.args])))
    return "\n".join(out) + "\n"


def _data(name: str) -> str:
    return resources.files("lud").joinpath("data", name).read_text(encoding="utf-8")


def demo_grammar() -> list[GrammarRule]:
    return parse_grammar_text(_data("demo.grammar"))


def demo_lexicon() -> list[LexEntry]:
    return parse_lexicon_text(_data("demo.lexicon"))


def demo_corpus() -> list[str]:
    return [s.strip() for s in _data("corpus.txt").splitlines()
            if s.strip() and not s.startswith("#")]
