"""
Scope resolution: admissible pluggings of a representation.

A plugging maps every hole to a distinct label drawn from the labels that
still need a place in the scope tree (the free labels, minus the top when
the top is a label). It is admissible when the tree built from structural
embedding plus the plugging is acyclic and entails every ``Leq`` and
``Lt`` constraint.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import AmbiguousTop, NoTop, RefusedTooLarge, UnknownLabel
from .model import (
    Diagnostic, Hole, Label, Leq, Lt, LudRepr, dominance, free_labels,
    subordination_closure, top,
)

__all__ = [
    "Plugging", "Pluggings", "pluggable_labels", "is_admissible",
    "enumerate_pluggings", "brute_force_pluggings", "filter_mood",
    "ORACLE_LIMIT",
]

ORACLE_LIMIT = 8


class Plugging(Mapping):
    """An immutable hole -> label assignment, ordered by hole."""

    __slots__ = ("_items", "_map")

    def __init__(self, assignment=()):
        if isinstance(assignment, Mapping):
            assignment = assignment.items()
        self._items = tuple(sorted(assignment))
        self._map = dict(self._items)

    def __getitem__(self, hole):
        return self._map[hole]

    def __iter__(self):
        return (h for h, _ in self._items)

    def __len__(self):
        return len(self._items)

    def __hash__(self):
        return hash(self._items)

    def __eq__(self, other):
        if isinstance(other, Plugging):
            return self._items == other._items
        if isinstance(other, Mapping):
            return dict(self.items()) == dict(other.items())
        return NotImplemented

    def sort_key(self):
        return tuple((h.sort_key(), lab.sort_key()) for h, lab in self._items)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return " ".join(f"{h}={lab}" for h, lab in self._items)

    def __repr__(self):
        return "Plugging({" + ", ".join(f"{h}: {lab}" for h, lab in self._items) + "})"


class Pluggings(list):
    """List of pluggings that also carries diagnostics (e.g. cardinality mismatch)."""

    def __init__(self, items=(), diagnostics=()):
        super().__init__(items)
        self.diagnostics = list(diagnostics)


def pluggable_labels(u: LudRepr) -> frozenset:
    """Codomain of pluggings: free labels except a label that is itself the top."""
    free = free_labels(u)
    try:
        t = top(u)
    except (NoTop, AmbiguousTop):
        return free
    return free - {t} if isinstance(t, Label) else free


def _cardinality(u: LudRepr):
    holes = sorted(u.holes)
    labels = sorted(pluggable_labels(u))
    if len(holes) != len(labels):
        return holes, labels, Diagnostic(
            "cardinality-mismatch", (len(holes), len(labels)),
            f"{len(holes)} holes but {len(labels)} pluggable labels")
    return holes, labels, None


def _constraints_hold(u: LudRepr, tree) -> bool:
    for c in u.constraints:
        if isinstance(c, Leq):
            if not tree.leq(c.l, c.h):
                return False
        elif isinstance(c, Lt):
            if c.l1 == c.l2 or not tree.leq(c.l1, c.l2):
                return False
    return True


def is_admissible(u: LudRepr, p: Mapping) -> bool:
    """True iff ``p`` is a bijection onto the pluggable labels, the resulting
    order is antisymmetric, and every constraint is entailed by the tree
    of structural embedding plus plugging."""
    holes = set(u.holes)
    if set(p) != holes or len(set(p.values())) != len(p):
        return False
    if set(p.values()) != set(pluggable_labels(u)):
        return False
    if not subordination_closure(u, p).antisymmetric:
        return False
    tree = dominance(u, p)
    return tree.antisymmetric and _constraints_hold(u, tree)


def brute_force_pluggings(u: LudRepr) -> Pluggings:
    """Reference enumeration: every permutation, filtered and sorted."""
    holes, labels, diag = _cardinality(u)
    if diag:
        return Pluggings([], [diag])
    if len(holes) > ORACLE_LIMIT:
        raise RefusedTooLarge(f"{len(holes)} holes exceed the oracle limit of {ORACLE_LIMIT}")
    found = []
    for perm in itertools.permutations(labels):
        p = Plugging(zip(holes, perm))
        if is_admissible(u, p):
            found.append(p)
    return Pluggings(sorted(found))


def _structural_up(u: LudRepr) -> dict:
    up = defaultdict(set)
    for lab, cond in u.conditions:
        for arg in cond.refs:
            up[arg].add(lab)
    return up


def _reaches(up: Mapping, src, dst) -> bool:
    stack, seen = [src], {src}
    while stack:
        n = stack.pop()
        if n == dst:
            return True
        for m in up.get(n, ()):
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return False


def _closure(edges: Mapping, src) -> set:
    stack, seen = [src], {src}
    while stack:
        for m in edges.get(stack.pop(), ()):
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return seen


def _leq_dead(up, down, plugged, taken, pluggable, c) -> bool:
    """True when ``Leq(c.l, c.h)`` can no longer hold in any completion."""
    above = _closure(up, c.l)
    if c.h in above:
        return False
    # l1 can only still move if something above it is an unplugged fragment root
    movable = any(n in pluggable and n not in taken for n in above)
    if not movable:
        return True
    below = _closure(down, c.h)
    return not any(isinstance(n, Hole) and n not in plugged for n in below)


def _search(u: LudRepr, holes: Sequence[Hole], labels: Sequence[Label]) -> Iterator[Plugging]:
    up = _structural_up(u)
    down = defaultdict(set)
    for lab, cond in u.conditions:
        down[lab].update(cond.refs)
    lts = [c for c in u.constraints if isinstance(c, Lt)]
    leqs = [c for c in u.constraints if isinstance(c, Leq)]
    pluggable = set(labels)
    chosen = []
    taken = set()
    plugged = set()

    def extend(i):
        if i == len(holes):
            p = Plugging(zip(holes, chosen))
            if is_admissible(u, p):
                yield p
            return
        h = holes[i]
        for lab in labels:
            if lab in taken:
                continue
            # plugging lab into h adds the edge lab -> h; a path h -> lab closes a cycle
            if _reaches(up, h, lab):
                continue
            up[lab].add(h)
            down[h].add(lab)
            taken.add(lab)
            plugged.add(h)
            if not (any(c.l1 == c.l2 or _reaches(up, c.l2, c.l1) for c in lts)
                    or any(_leq_dead(up, down, plugged, taken, pluggable, c) for c in leqs)):
                chosen.append(lab)
                yield from extend(i + 1)
                chosen.pop()
            taken.discard(lab)
            plugged.discard(h)
            down[h].discard(lab)
            up[lab].discard(h)

    yield from extend(0)


def enumerate_pluggings(u: LudRepr) -> Pluggings:
    """All admissible pluggings, sorted by (hole, label) identifiers.

    Backtracks over holes in order and prunes partial assignments that
    already close a cycle or invert an ``Lt`` constraint.
    """
    holes, labels, diag = _cardinality(u)
    if diag:
        return Pluggings([], [diag])
    return Pluggings(_search(u, holes, labels))


def _mood_on_top(u: LudRepr, mood: Label, p: Mapping) -> bool:
    order = subordination_closure(u, p)
    return not any(isinstance(n, Label) for n in order.above(mood))


def filter_mood(u: LudRepr, mood: Label, pluggings: Iterable[Mapping]) -> list:
    """Keep the pluggings in which the mood label outscopes every other label."""
    if mood not in u.labels:
        raise UnknownLabel(f"{mood} does not name a condition")
    return [p for p in pluggings if _mood_on_top(u, mood, p)]
