"""
Feature-annotated context-free grammar, chart parsing and semantic
construction.

Rules carry flat path equations (``1:agr = 2:agr`` or ``1:val = tr``) and a
semantic action naming which children act as functor and argument. Parsing
runs an Earley recognizer over the category skeleton, then reads all trees
off the chart while checking feature equations bottom-up. Semantics is
folded over each finished tree.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .composition import LexEntry, fun_arg_apply, lud_merge
from .errors import BindingClash, DerivationRejected, EmptySubcat
from .model import Diagnostic, IdGenerator, LudRepr, well_formed

__all__ = [
    "unify_features", "GrammarRule", "Derivation", "Parses", "Analysis",
    "parse", "derive_lud", "analyze", "tokenize", "ACTIONS",
]

ACTIONS = {"fun_arg": 2, "merge": 2, "pass": 1}


def unify_features(a: Mapping, b: Mapping) -> Optional[dict]:
    """Most general unifier of two flat attribute-value lists, or None on a clash."""
    out = dict(a)
    for k, v in b.items():
        if k in out and out[k] != v:
            return None
        out[k] = v
    return out


Path = tuple  # (child index, attribute); index 0 is the mother


@dataclass(frozen=True)
class GrammarRule:
    lhs: str
    rhs: tuple
    equations: tuple = ()
    action: tuple = ("pass", 1)

    def __post_init__(self):
        object.__setattr__(self, "rhs", tuple(self.rhs))
        object.__setattr__(self, "equations", tuple(self.equations))
        object.__setattr__(self, "action", tuple(self.action))
        if not self.rhs:
            raise ValueError("empty right-hand sides are not supported")
        n = len(self.rhs)
        for left, right in self.equations:
            for path in (left, right) if isinstance(right, tuple) else (left,):
                if not 0 <= path[0] <= n:
                    raise ValueError(f"{self}: path {path} outside the rule")
        kind, *idx = self.action
        if kind not in ACTIONS or len(idx) != ACTIONS[kind]:
            raise ValueError(f"bad semantic action {self.action!r}")
        if not all(1 <= i <= n for i in idx):
            raise ValueError(f"{self}: action child index out of range")

    def __str__(self):
        return f"{self.lhs} -> {' '.join(self.rhs)}"


def _solve(rule: GrammarRule, child_feats: Sequence[Mapping]) -> Optional[dict]:
    slots = [{}] + [dict(f) for f in child_feats]
    changed = True
    while changed:
        changed = False
        for (i, a), right in rule.equations:
            left_v = slots[i].get(a)
            if isinstance(right, tuple):
                j, b = right
                right_v = slots[j].get(b)
            else:
                right_v = right
            if left_v is not None and right_v is not None:
                if left_v != right_v:
                    return None
                continue
            v = left_v if left_v is not None else right_v
            if v is None:
                continue
            if left_v is None:
                slots[i][a] = v
            else:
                slots[j][b] = v
            changed = True
    return slots[0]


@dataclass(frozen=True)
class Derivation:
    """A parse tree; leaves carry a lexical entry, inner nodes a rule."""

    category: str
    start: int
    end: int
    rule: Optional[GrammarRule] = None
    entry: Optional[LexEntry] = None
    children: tuple = ()
    features: Mapping = field(default_factory=dict, compare=False)

    def leaves(self) -> list:
        if self.entry is not None:
            return [self.entry]
        return [e for c in self.children for e in c.leaves()]

    def __str__(self):
        if self.entry is not None:
            return f"({self.category} {self.entry.form})"
        return f"({self.category} " + " ".join(str(c) for c in self.children) + ")"


class Parses(list):
    """A list of derivations with the diagnostics produced along the way."""

    def __init__(self, items=(), diagnostics=()):
        super().__init__(items)
        self.diagnostics = list(diagnostics)


def tokenize(sentence: str) -> list[str]:
    return sentence.lower().split()


def _index(lexicon: Iterable[LexEntry]) -> dict:
    by_form = defaultdict(list)
    for e in lexicon:
        by_form[e.form].append(e)
    return by_form


def _earley(tokens, rules, preterminals, by_form, start) -> set:
    """Completed constituents ``(category, i, j)`` reachable from ``start``."""
    n = len(tokens)
    by_lhs = defaultdict(list)
    for r in rules:
        by_lhs[r.lhs].append(r)
    chart = [dict() for _ in range(n + 1)]  # item -> None, insertion ordered
    completed = set()

    def add(k, item):
        if item not in chart[k]:
            chart[k][item] = None
            agenda[k].append(item)

    agenda = [[] for _ in range(n + 1)]
    for r in by_lhs[start]:
        add(0, (r, 0, 0))
    scannable = [{e.category for e in by_form.get(t, ())} for t in tokens]
    if n == 1 and start in scannable[0]:
        completed.add((start, 0, 1))

    for k in range(n + 1):
        while agenda[k]:
            rule, dot, origin = agenda[k].pop(0)
            if dot == len(rule.rhs):
                completed.add((rule.lhs, origin, k))
                for r2, d2, o2 in list(chart[origin]):
                    if d2 < len(r2.rhs) and r2.rhs[d2] == rule.lhs:
                        add(k, (r2, d2 + 1, o2))
                continue
            sym = rule.rhs[dot]
            if sym in preterminals and k < n and sym in scannable[k]:
                completed.add((sym, k, k + 1))
                add(k + 1, (rule, dot + 1, origin))
            for r2 in by_lhs.get(sym, ()):
                add(k, (r2, 0, k))
    return completed


def parse(tokens: Sequence[str], grammar: Sequence[GrammarRule], lexicon: Iterable[LexEntry],
          start: str = "s", features: bool = True) -> Parses:
    """All derivations of ``start`` spanning ``tokens``, in leftmost-derivation order.

    With ``features=False`` the feature equations are ignored and only the
    context-free skeleton is used.
    """
    tokens = list(tokens)
    by_form = _index(lexicon)
    missing = [t for t in tokens if t not in by_form]
    if missing:
        return Parses([], [Diagnostic("lexicon-miss", tuple(missing),
                                      "unknown tokens: " + ", ".join(missing))])
    if not tokens:
        return Parses()
    rules = list(grammar)
    preterminals = {e.category for es in by_form.values() for e in es}
    completed = _earley(tokens, rules, preterminals, by_form, start)
    by_lhs = defaultdict(list)
    for r in rules:
        by_lhs[r.lhs].append(r)

    memo = {}
    active = set()

    def splits(rhs, i, j):
        if len(rhs) == 1:
            if (rhs[0], i, j) in completed:
                yield ((rhs[0], i, j),)
            return
        for mid in range(i + 1, j):
            if (rhs[0], i, mid) in completed:
                for rest in splits(rhs[1:], mid, j):
                    yield ((rhs[0], i, mid),) + rest

    def trees(cat, i, j) -> list:
        key = (cat, i, j)
        if key in memo:
            return memo[key]
        if key in active:
            return []
        active.add(key)
        out = []
        if j == i + 1:
            for e in by_form[tokens[i]]:
                if e.category == cat:
                    out.append(Derivation(cat, i, j, entry=e, features=dict(e.features)))
        for rule in by_lhs.get(cat, ()):
            for spans in splits(rule.rhs, i, j):
                options = [trees(*s) for s in spans]
                for kids in itertools.product(*options):
                    feats = {}
                    if features:
                        feats = _solve(rule, [k.features for k in kids])
                        if feats is None:
                            continue
                    out.append(Derivation(cat, i, j, rule=rule, children=tuple(kids), features=feats))
        active.discard(key)
        memo[key] = out
        return out

    if (start, 0, len(tokens)) not in completed:
        return Parses()
    return Parses(trees(start, 0, len(tokens)))


def _node_path(path: tuple) -> str:
    return "root" if not path else "root." + ".".join(str(p) for p in path)


def derive_lud(d: Derivation, ids: Optional[IdGenerator] = None, _path: tuple = ()) -> LudRepr:
    """Fold the semantic actions of ``d`` bottom-up.

    Raises DerivationRejected, naming the failing node, when an action fails.
    """
    ids = ids or IdGenerator()
    if d.entry is not None:
        return d.entry.instantiate(ids)
    sems = [derive_lud(c, ids, _path + (k + 1,)) for k, c in enumerate(d.children)]
    kind, *idx = d.rule.action
    try:
        if kind == "pass":
            return sems[idx[0] - 1]
        if kind == "fun_arg":
            return fun_arg_apply(sems[idx[0] - 1], sems[idx[1] - 1])
        return lud_merge(sems[idx[0] - 1], sems[idx[1] - 1])
    except (BindingClash, EmptySubcat) as exc:
        raise DerivationRejected(Diagnostic(
            "semantic-rejection", _node_path(_path),
            f"{_node_path(_path)} [{d.rule}]: {exc}")) from None


@dataclass(frozen=True)
class Analysis:
    derivation: Derivation
    lud: LudRepr


def analyze(tokens: Sequence[str], grammar: Sequence[GrammarRule], lexicon: Iterable[LexEntry],
            start: str = "s") -> Parses:
    """Parse and build semantics; semantically rejected derivations are dropped.

    Each derivation gets its own identifier generator, so results are
    reproducible.
    """
    parses = parse(tokens, grammar, lexicon, start=start)
    out = Parses([], parses.diagnostics)
    for d in parses:
        try:
            u = derive_lud(d, IdGenerator())
        except DerivationRejected as exc:
            out.diagnostics.append(exc.diagnostic)
            continue
        if u.subcat:
            out.diagnostics.append(Diagnostic("unsaturated", str(d),
                                              f"{d}: {len(u.subcat)} argument(s) still expected"))
            continue
        problems = well_formed(u)
        if problems:
            out.diagnostics.extend(problems)
            continue
        out.append(Analysis(d, u))
    return out
