"""
DRS boxes and the interpretation of plugged LUD representations.

Box rendering format, version ``drs-box/1``::

    +-----------------+
    | e z             |
    +-----------------+
    | gehen(e)        |
    | theme(e,z)      |
    +-----------------+

The first row lists the domain markers, sorted; below the rule come the
conditions, sorted by their rendered text. A complex condition is a stack
of framed sub-boxes. Every line of a sub-box carries a three-character
gutter: ``"~  "`` on the first line of a negated box, ``"=> "`` on the
first line of a consequent, ``"or "`` on the first line of the second
disjunct, and three spaces everywhere else. Box width is the longest
content line plus one space of padding on each side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .errors import NotAdmissible
from .model import (
    Conj, Disj, Dm, Hole, Imp, LudRepr, Marker, Neg, Pred, Presup,
    natural_key, top,
)
from .plugging import Pluggings, enumerate_pluggings, is_admissible

__all__ = [
    "Drs", "Atom", "Not", "Implies", "Or", "EMPTY", "merge", "interpret",
    "accommodate", "readings", "render_box", "declared_markers", "BOX_FORMAT",
]

BOX_FORMAT = "drs-box/1"


def _marker_key(m):
    return natural_key(m.name)


@dataclass(frozen=True)
class Atom:
    rel: str
    args: tuple

    def __str__(self):
        return f"{self.rel}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Not:
    k: "Drs"

    def __str__(self):
        return f"~{self.k}"


@dataclass(frozen=True)
class Implies:
    k1: "Drs"
    k2: "Drs"

    def __str__(self):
        return f"{self.k1} => {self.k2}"


@dataclass(frozen=True)
class Or:
    k1: "Drs"
    k2: "Drs"

    def __str__(self):
        return f"{self.k1} or {self.k2}"


DrsCondition = Union[Atom, Not, Implies, Or]


@dataclass(frozen=True)
class Drs:
    domain: frozenset = frozenset()
    conds: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "domain", frozenset(self.domain))
        object.__setattr__(self, "conds", frozenset(self.conds))

    def __str__(self):
        dom = ",".join(str(m) for m in sorted(self.domain, key=_marker_key))
        conds = ", ".join(sorted(str(c) for c in self.conds))
        return f"[{dom} | {conds}]" if dom else f"[ | {conds}]"


EMPTY = Drs()


def merge(k1: Drs, k2: Drs) -> Drs:
    """Union of domains and of condition sets."""
    return Drs(k1.domain | k2.domain, k1.conds | k2.conds)


def _interpret_node(u: LudRepr, p: Mapping, node) -> Drs:
    if isinstance(node, Hole):
        return _interpret_node(u, p, p[node])
    cond = u.cond[node]
    if isinstance(cond, Dm):
        return Drs({cond.x})
    if isinstance(cond, Pred):
        return Drs((), {Atom(cond.rel, cond.args)})
    if isinstance(cond, Conj):
        return merge(_interpret_node(u, p, cond.a), _interpret_node(u, p, cond.b))
    if isinstance(cond, Imp):
        return Drs((), {Implies(_interpret_node(u, p, cond.a), _interpret_node(u, p, cond.b))})
    if isinstance(cond, Disj):
        return Drs((), {Or(_interpret_node(u, p, cond.a), _interpret_node(u, p, cond.b))})
    if isinstance(cond, Neg):
        return Drs((), {Not(_interpret_node(u, p, cond.a))})
    raise TypeError(f"not a LUD condition: {cond!r}")


def accommodate(u: LudRepr, p: Mapping, k: Drs) -> Drs:
    """Merge every presupposed label's interpretation into the outermost box."""
    for c in u.sorted_constraints():
        if isinstance(c, Presup):
            k = merge(k, _interpret_node(u, p, c.l1))
    return k


def declared_markers(k: Drs) -> list:
    """All markers declared in ``k`` and its sub-boxes (with repetitions)."""
    out = list(k.domain)
    for c in k.conds:
        for sub in _subboxes(c):
            out.extend(declared_markers(sub))
    return out


def _subboxes(c) -> tuple:
    if isinstance(c, Not):
        return (c.k,)
    if isinstance(c, (Implies, Or)):
        return (c.k1, c.k2)
    return ()


def _used_markers(k: Drs) -> set:
    used = set()
    for c in k.conds:
        if isinstance(c, Atom):
            used.update(a for a in c.args if isinstance(a, Marker))
        for sub in _subboxes(c):
            used |= _used_markers(sub)
    return used


def _declare(k: Drs, markers: set) -> Drs:
    """Existentially close ``markers`` in the innermost box using each of them."""
    if not markers:
        return k
    here = set()
    pending = set(markers)
    local_atoms = set()
    for c in k.conds:
        if isinstance(c, Atom):
            local_atoms.update(c.args)
    here |= pending & local_atoms
    pending -= here
    # a marker used in two different sub-boxes is declared here
    counts = {}
    for c in k.conds:
        for sub in _subboxes(c):
            for m in pending & _used_markers(sub):
                counts[m] = counts.get(m, 0) + 1
    here |= {m for m, n in counts.items() if n > 1}
    pending -= here

    def close(sub):
        return _declare(sub, pending & _used_markers(sub))

    conds = set()
    for c in k.conds:
        if isinstance(c, Not):
            conds.add(Not(close(c.k)))
        elif isinstance(c, Implies):
            conds.add(Implies(close(c.k1), close(c.k2)))
        elif isinstance(c, Or):
            conds.add(Or(close(c.k1), close(c.k2)))
        else:
            conds.add(c)
    return Drs(k.domain | here, conds)


def interpret(u: LudRepr, p: Mapping) -> Drs:
    """The DRS for ``u`` under the admissible plugging ``p``.

    The top node is interpreted recursively (labels through their
    conditions, holes through the plugging), presupposed material is
    accommodated globally, and markers that no ``dm`` condition introduces
    (lambda-bound instances such as a verb's event) are declared in the
    innermost box that contains all of their occurrences.
    """
    root = top(u)
    if not is_admissible(u, p):
        raise NotAdmissible(f"plugging {p} is not admissible")
    k = _interpret_node(u, p, root)
    k = accommodate(u, p, k)
    introduced = {cond.x for _, cond in u.conditions if isinstance(cond, Dm)}
    return _declare(k, _used_markers(k) - introduced - set(declared_markers(k)))


def readings(u: LudRepr) -> Pluggings:
    """One DRS per admissible plugging, in plugging order."""
    ps = enumerate_pluggings(u)
    return Pluggings([interpret(u, p) for p in ps], ps.diagnostics)


# ---------------------------------------------------------------------------
# rendering


def _frame(header: list, body: list) -> list:
    width = max([len(s) for s in header + body] + [0])
    rule = "+" + "-" * (width + 2) + "+"
    rows = [rule]
    rows += [f"| {s.ljust(width)} |" for s in (header or [""])]
    rows.append(rule)
    rows += [f"| {s.ljust(width)} |" for s in (body or [""])]
    rows.append(rule)
    return rows


def _gutter(lines: list, first: str) -> list:
    return [(first if i == 0 else "   ") + s for i, s in enumerate(lines)]


def _render_cond(c) -> list:
    if isinstance(c, Atom):
        return [str(c)]
    if isinstance(c, Not):
        return _gutter(_render(c.k), "~  ")
    if isinstance(c, Implies):
        return _gutter(_render(c.k1), "   ") + _gutter(_render(c.k2), "=> ")
    if isinstance(c, Or):
        return _gutter(_render(c.k1), "   ") + _gutter(_render(c.k2), "or ")
    raise TypeError(f"not a DRS condition: {c!r}")


def _render(k: Drs) -> list:
    header = [" ".join(str(m) for m in sorted(k.domain, key=_marker_key))]
    blocks = sorted((_render_cond(c) for c in k.conds), key=lambda b: "\n".join(b))
    return _frame(header, [line for b in blocks for line in b])


def render_box(k: Drs) -> str:
    """Deterministic ASCII rendering of ``k`` (format ``drs-box/1``)."""
    return "\n".join(_render(k))
