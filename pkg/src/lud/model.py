"""
LUD data model.

A representation is a set of holes, a set of labeled conditions and a set
of constraints, together with the composition interface (a context triple
and a subcat list of argument contexts). Everything here is immutable;
operations return new values.
"""

from __future__ import annotations

import re
import threading
from collections import defaultdict
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Optional, Union

from .errors import AmbiguousTop, CycleDetected, NoTop

__all__ = [
    "Label", "Hole", "Marker", "Param",
    "Dm", "Pred", "Neg", "Imp", "Conj", "Disj", "CONDITION_TYPES",
    "Leq", "Lt", "Presup",
    "Context", "LudRepr", "Diagnostic", "Order", "IdGenerator",
    "natural_key", "well_formed", "structural_order", "subordination_closure",
    "top", "free_labels", "presupposed_labels", "rename_apart", "map_ids",
]


def natural_key(name: str) -> tuple:
    """Sort key that orders ``l2`` before ``l10``."""
    parts = re.split(r"(\d+)", name)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts))


# ---------------------------------------------------------------------------
# identifiers

_RANK = {}


class _Ident:
    __slots__ = ()

    def sort_key(self):
        return (_RANK[type(self)], natural_key(self.name))

    def __lt__(self, other):
        if not isinstance(other, _Ident):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return self.name


@dataclass(frozen=True, repr=False)
class Hole(_Ident):
    name: str

    def __repr__(self):
        return f"Hole({self.name!r})"


@dataclass(frozen=True, repr=False)
class Label(_Ident):
    name: str

    def __repr__(self):
        return f"Label({self.name!r})"


@dataclass(frozen=True, repr=False)
class Marker(_Ident):
    """A discourse marker; ``kind`` is ``"entity"`` or ``"event"``."""

    name: str
    kind: str = "entity"

    def __post_init__(self):
        if self.kind not in ("entity", "event"):
            raise ValueError(f"marker kind must be entity or event, not {self.kind!r}")

    def __repr__(self):
        return f"Marker({self.name!r}, {self.kind!r})"


@dataclass(frozen=True, repr=False)
class Param(_Ident):
    """A lambda-bound placeholder, bound during functor-argument application.

    ``sort`` says what it stands for: ``"marker"``, ``"label"`` or ``"hole"``.
    """

    name: str
    sort: str

    def __post_init__(self):
        if self.sort not in ("marker", "label", "hole"):
            raise ValueError(f"bad parameter sort {self.sort!r}")

    def __str__(self):
        return "?" + self.name

    def __repr__(self):
        return f"Param({self.name!r}, {self.sort!r})"


_RANK.update({Hole: 0, Label: 1, Marker: 2, Param: 3})

NodeRef = Union[Label, Hole, Param]
MarkerRef = Union[Marker, Param]


# ---------------------------------------------------------------------------
# conditions


@dataclass(frozen=True)
class Dm:
    x: MarkerRef

    @property
    def refs(self) -> tuple:
        return ()

    @property
    def markers(self) -> tuple:
        return (self.x,)

    def map(self, f):
        return Dm(f(self.x))


@dataclass(frozen=True)
class Pred:
    rel: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) < 1:
            raise ValueError(f"pred({self.rel}) needs at least one argument")

    @property
    def refs(self) -> tuple:
        return ()

    @property
    def markers(self) -> tuple:
        return self.args

    def map(self, f):
        return Pred(self.rel, tuple(f(a) for a in self.args))


@dataclass(frozen=True)
class Neg:
    a: NodeRef

    @property
    def refs(self) -> tuple:
        return (self.a,)

    @property
    def markers(self) -> tuple:
        return ()

    def map(self, f):
        return Neg(f(self.a))


@dataclass(frozen=True)
class _Binary:
    a: NodeRef
    b: NodeRef

    @property
    def refs(self) -> tuple:
        return (self.a, self.b)

    @property
    def markers(self) -> tuple:
        return ()

    def map(self, f):
        return type(self)(f(self.a), f(self.b))


class Imp(_Binary):
    pass


class Conj(_Binary):
    pass


class Disj(_Binary):
    pass


CONDITION_TYPES = (Dm, Pred, Neg, Imp, Conj, Disj)
Condition = Union[Dm, Pred, Neg, Imp, Conj, Disj]


# ---------------------------------------------------------------------------
# constraints


@dataclass(frozen=True)
class Leq:
    """``l <= h``: label (or label parameter) subordinated to a hole."""

    l: NodeRef
    h: NodeRef

    @property
    def operands(self):
        return (self.l, self.h)

    def map(self, f):
        return Leq(f(self.l), f(self.h))


@dataclass(frozen=True)
class Lt:
    l1: NodeRef
    l2: NodeRef

    @property
    def operands(self):
        return (self.l1, self.l2)

    def map(self, f):
        return Lt(f(self.l1), f(self.l2))


@dataclass(frozen=True)
class Presup:
    l1: NodeRef
    l2: NodeRef

    @property
    def operands(self):
        return (self.l1, self.l2)

    def map(self, f):
        return Presup(f(self.l1), f(self.l2))


_CONSTRAINT_RANK = {Leq: 0, Lt: 1, Presup: 2}


def _constraint_key(c):
    return (_CONSTRAINT_RANK[type(c)],) + tuple(op.sort_key() for op in c.operands)


def _cond_key(pair):
    lab, cond = pair
    return lab.sort_key()


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class Context:
    """Composition interface: main instance, main label and top hole.

    Any slot may be ``None`` (anonymous) or a :class:`Param` while the
    representation still waits for arguments.
    """

    instance: Optional[MarkerRef] = None
    main: Optional[NodeRef] = None
    top: Optional[NodeRef] = None

    def __iter__(self):
        return iter((self.instance, self.main, self.top))

    def map(self, f):
        return Context(*(None if v is None else f(v) for v in self))


@dataclass(frozen=True)
class LudRepr:
    """An (underspecified) LUD representation.

    ``conditions`` may be given as a mapping or as ``(label, condition)``
    pairs; it is stored as a sorted tuple of pairs so that malformed input
    (duplicate labels, holes used as names) survives long enough for
    :func:`well_formed` to report it.
    """

    holes: frozenset = frozenset()
    conditions: tuple = ()
    constraints: frozenset = frozenset()
    context: Context = field(default_factory=Context)
    subcat: tuple = ()

    def __post_init__(self):
        conds = self.conditions
        if isinstance(conds, Mapping):
            conds = conds.items()
        object.__setattr__(self, "holes", frozenset(self.holes))
        object.__setattr__(self, "conditions", tuple(sorted(conds, key=_cond_key)))
        object.__setattr__(self, "constraints", frozenset(self.constraints))
        object.__setattr__(self, "subcat", tuple(self.subcat))

    __hash__ = None

    @cached_property
    def cond(self) -> dict:
        """Mapping label -> condition (last one wins on duplicates)."""
        return dict(self.conditions)

    @property
    def labels(self) -> frozenset:
        return frozenset(k for k, _ in self.conditions if isinstance(k, Label))

    @property
    def main(self):
        return self.context.main

    def sorted_constraints(self) -> list:
        return sorted(self.constraints, key=_constraint_key)

    def identifiers(self) -> Iterator:
        """Every identifier occurring anywhere in the representation."""
        yield from self.holes
        for lab, cond in self.conditions:
            yield lab
            yield from cond.refs
            yield from cond.markers
        for c in self.constraints:
            yield from c.operands
        for ctx in (self.context, *self.subcat):
            yield from (v for v in ctx if v is not None)

    @property
    def markers(self) -> frozenset:
        return frozenset(i for i in self.identifiers() if isinstance(i, Marker))

    @property
    def params(self) -> frozenset:
        return frozenset(i for i in self.identifiers() if isinstance(i, Param))

    def bound_params(self) -> frozenset:
        """Parameters made available by the context or the subcat list."""
        out = set()
        for ctx in (self.context, *self.subcat):
            out.update(v for v in ctx if isinstance(v, Param))
        return frozenset(out)

    def replace(self, **changes) -> "LudRepr":
        return replace(self, **changes)


@dataclass(frozen=True)
class Diagnostic:
    """A reported problem. Equality ignores the free-text message."""

    code: str
    subject: object = None
    message: str = field(default="", compare=False)
    line: Optional[int] = field(default=None, compare=False)
    column: Optional[int] = field(default=None, compare=False)

    def __str__(self):
        where = f"{self.line}:{self.column}: " if self.line is not None else ""
        text = self.message or self.code
        return f"{where}{self.code}: {text}" if self.message else f"{where}{text}"


# ---------------------------------------------------------------------------
# fresh identifiers


class IdGenerator:
    """Deterministic, thread-safe source of fresh identifiers."""

    _PREFIX = {"label": "l", "hole": "h", "entity": "x", "event": "e"}
    _PARAM_PREFIX = {"marker": "X", "label": "L", "hole": "H"}

    def __init__(self):
        self._lock = threading.Lock()
        self._counters = defaultdict(int)

    def _next(self, prefix: str) -> str:
        with self._lock:
            n = self._counters[prefix]
            self._counters[prefix] = n + 1
        return f"{prefix}{n}"

    def label(self) -> Label:
        return Label(self._next("l"))

    def hole(self) -> Hole:
        return Hole(self._next("h"))

    def marker(self, kind: str = "entity") -> Marker:
        return Marker(self._next(self._PREFIX[kind]), kind)

    def param(self, sort: str) -> Param:
        return Param(self._next(self._PARAM_PREFIX[sort]), sort)


# ---------------------------------------------------------------------------
# identifier mapping


def map_ids(u: LudRepr, f: Callable) -> LudRepr:
    """Apply ``f`` to every identifier of ``u`` (holes, labels, markers, params)."""
    return LudRepr(
        holes=frozenset(f(h) for h in u.holes),
        conditions=[(f(lab), cond.map(f)) for lab, cond in u.conditions],
        constraints=frozenset(c.map(f) for c in u.constraints),
        context=u.context.map(f),
        subcat=tuple(ctx.map(f) for ctx in u.subcat),
    )


def _namespace(i) -> str:
    if isinstance(i, Param):
        return "param"
    return {Hole: "hole", Label: "label", Marker: "marker"}[type(i)]


def _fresh_name(prefix: str, taken: set) -> str:
    top_n = -1
    for name in taken:
        m = re.fullmatch(re.escape(prefix) + r"(\d+)", name)
        if m:
            top_n = max(top_n, int(m.group(1)))
    return f"{prefix}{top_n + 1}"


def rename_apart(u1: LudRepr, u2: LudRepr) -> tuple[LudRepr, LudRepr]:
    """Return ``(u1, u2')`` where ``u2'`` shares no identifier with ``u1``.

    Only clashing identifiers of the second argument are renamed, so
    disjoint inputs come back unchanged.
    """
    taken = defaultdict(set)
    for i in list(u1.identifiers()) + list(u2.identifiers()):
        taken[_namespace(i)].add(i.name)
    first = defaultdict(set)
    for i in u1.identifiers():
        first[_namespace(i)].add(i.name)

    renaming = {}
    for i in sorted(set(u2.identifiers())):
        ns = _namespace(i)
        if i.name not in first[ns]:
            continue
        prefix = re.match(r"[^\d]*", i.name).group(0) or ns[0]
        new = _fresh_name(prefix, taken[ns])
        taken[ns].add(new)
        renaming[i] = replace(i, name=new)
    if not renaming:
        return u1, u2
    return u1, map_ids(u2, lambda i: renaming.get(i, i))


# ---------------------------------------------------------------------------
# checks and orders


def _structural_edges(u: LudRepr) -> set:
    edges = set()
    for lab, cond in u.conditions:
        for arg in cond.refs:
            if not isinstance(arg, Param):
                edges.add((arg, lab))
    return edges


def _find_cycle(nodes: Iterable, edges: set) -> Optional[list]:
    up = defaultdict(list)
    for a, b in edges:
        if a != b:
            up[a].append(b)
    state = {}

    def visit(n, stack):
        state[n] = 1
        stack.append(n)
        for m in sorted(up[n]):
            if state.get(m) == 1:
                return stack[stack.index(m):]
            if m not in state:
                found = visit(m, stack)
                if found:
                    return found
        stack.pop()
        state[n] = 2
        return None

    for n in sorted(set(nodes)):
        if n not in state:
            found = visit(n, [])
            if found:
                return found
    return None


def well_formed(u: LudRepr, signature: Optional[Mapping[str, int]] = None) -> list[Diagnostic]:
    """Return every well-formedness violation of ``u`` (empty list if valid).

    ``signature`` optionally maps relation symbols to their arity.
    """
    diags = []
    seen = set()
    declared = u.labels
    bound = u.bound_params()

    def check_ref(ref, where):
        if isinstance(ref, Param):
            if ref not in bound:
                diags.append(Diagnostic("unbound-parameter", ref, f"{ref} in {where} is not lambda-bound"))
        elif isinstance(ref, Hole):
            if ref not in u.holes:
                diags.append(Diagnostic("dangling", ref, f"undeclared hole {ref} in {where}"))
        elif isinstance(ref, Label):
            if ref not in declared:
                diags.append(Diagnostic("dangling", ref, f"undeclared label {ref} in {where}"))
        else:
            diags.append(Diagnostic("bad-ref", ref, f"{ref!r} in {where} is not a label or hole"))

    for lab, cond in u.conditions:
        if isinstance(lab, Hole):
            diags.append(Diagnostic("hole-as-label", lab, f"hole {lab} names a condition"))
        elif not isinstance(lab, Label):
            diags.append(Diagnostic("bad-label", lab, f"{lab!r} cannot name a condition"))
        elif lab in seen:
            diags.append(Diagnostic("duplicate-label", lab, f"label {lab} names two conditions"))
        seen.add(lab)
        if not isinstance(cond, CONDITION_TYPES):
            diags.append(Diagnostic("bad-condition", lab, f"{cond!r} is not a LUD condition"))
            continue
        for arg in cond.refs:
            if arg == lab:
                diags.append(Diagnostic("self-embedding", lab, f"{lab} occurs inside its own condition"))
            else:
                check_ref(arg, str(lab))
        for m in cond.markers:
            if isinstance(m, Param):
                if m not in bound:
                    diags.append(Diagnostic("unbound-parameter", m, f"{m} in {lab} is not lambda-bound"))
            elif not isinstance(m, Marker):
                diags.append(Diagnostic("bad-marker", lab, f"{m!r} in {lab} is not a discourse marker"))
        if isinstance(cond, Pred) and signature and cond.rel in signature:
            if signature[cond.rel] != len(cond.args):
                diags.append(Diagnostic(
                    "arity", lab,
                    f"{cond.rel} takes {signature[cond.rel]} arguments, got {len(cond.args)}"))

    for c in u.sorted_constraints():
        if isinstance(c, Leq):
            if not (isinstance(c.h, Hole) or (isinstance(c.h, Param) and c.h.sort == "hole")):
                diags.append(Diagnostic("leq-not-hole", c, f"right operand of {c} must be a hole"))
            if isinstance(c.l, Hole):
                diags.append(Diagnostic("leq-not-label", c, f"left operand of {c} must be a label"))
        else:
            for op in c.operands:
                if isinstance(op, Hole):
                    diags.append(Diagnostic("operand-not-label", c, f"{c} relates labels only"))
        for op in c.operands:
            check_ref(op, type(c).__name__.lower())

    for ctx in (u.context, *u.subcat):
        for slot, v in zip(("instance", "main", "top"), ctx):
            if v is None or isinstance(v, Param):
                continue
            if slot == "instance":
                if not isinstance(v, Marker):
                    diags.append(Diagnostic("bad-context", v, f"context instance {v} is not a marker"))
            else:
                check_ref(v, "context")

    cycle = _find_cycle([lab for lab, _ in u.conditions], _structural_edges(u))
    if cycle:
        diags.append(Diagnostic("cycle", tuple(cycle), "cyclic structural embedding: "
                                + " < ".join(str(n) for n in cycle)))
    return diags


def structural_order(u: LudRepr) -> frozenset:
    """Pairs ``(child, parent)`` for every argument of every condition."""
    edges = _structural_edges(u)
    cycle = _find_cycle([n for e in edges for n in e], edges)
    if cycle or any(a == b for a, b in edges):
        raise CycleDetected("cyclic structural embedding")
    return frozenset(edges)


@dataclass(frozen=True)
class Order:
    """A reflexive-transitive relation given as ``(lower, upper)`` pairs."""

    nodes: frozenset
    pairs: frozenset
    antisymmetric: bool

    def __contains__(self, pair):
        return pair in self.pairs

    def leq(self, a, b) -> bool:
        return (a, b) in self.pairs

    def above(self, a) -> set:
        return {b for x, b in self.pairs if x == a and b != a}

    def maximal(self, among: Iterable) -> list:
        among = set(among)
        return sorted(n for n in among if not (self.above(n) & among))


def _closure(nodes: set, edges: set) -> Order:
    up = defaultdict(set)
    for a, b in edges:
        up[a].add(b)
        nodes.add(a)
        nodes.add(b)
    pairs = set()
    for n in nodes:
        stack, seen = [n], {n}
        while stack:
            cur = stack.pop()
            for m in up[cur]:
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        pairs.update((n, m) for m in seen)
    anti = not any(a != b and (b, a) in pairs for a, b in pairs)
    return Order(frozenset(nodes), frozenset(pairs), anti)


def _ground(x) -> bool:
    return isinstance(x, (Label, Hole))


def subordination_closure(u: LudRepr, plugging: Optional[Mapping] = None) -> Order:
    """Reflexive-transitive closure of structure, Leq/Lt constraints and plugging."""
    nodes = set(u.holes) | {lab for lab, _ in u.conditions if _ground(lab)}
    edges = {e for e in _structural_edges(u)}
    for c in u.constraints:
        if isinstance(c, (Leq, Lt)) and _ground(c.operands[0]) and _ground(c.operands[1]):
            edges.add(c.operands)
    if plugging:
        edges.update((lab, h) for h, lab in plugging.items())
    return _closure(nodes, edges)


def dominance(u: LudRepr, plugging: Optional[Mapping] = None) -> Order:
    """Closure of structural embedding and plugging only (no constraints)."""
    nodes = set(u.holes) | {lab for lab, _ in u.conditions if _ground(lab)}
    edges = set(_structural_edges(u))
    if plugging:
        edges.update((lab, h) for h, lab in plugging.items())
    return _closure(nodes, edges)


def presupposed_labels(u: LudRepr) -> frozenset:
    return frozenset(c.l1 for c in u.constraints if isinstance(c, Presup))


def top(u: LudRepr):
    """The unique maximal label or hole, ignoring presupposed material."""
    order = subordination_closure(u)
    if not order.antisymmetric:
        raise NoTop("subordination order is cyclic")
    presup = presupposed_labels(u)
    candidates = order.maximal(n for n in order.nodes if n not in presup)
    if not candidates:
        raise NoTop("representation has no labels or holes")
    if len(candidates) > 1:
        raise AmbiguousTop(candidates)
    return candidates[0]


def free_labels(u: LudRepr) -> frozenset:
    """Labels that are neither embedded in a condition nor presupposed."""
    embedded = {arg for _, cond in u.conditions for arg in cond.refs}
    return frozenset(u.labels - embedded - presupposed_labels(u))
