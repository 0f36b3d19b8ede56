"""Label isomorphism and condition embeddings between representations."""

from __future__ import annotations

from typing import Optional

from .model import Hole, Label, LudRepr, Marker, Param

_TAGS = {"Dm": "dm", "Pred": "pred", "Neg": "not", "Imp": "imp", "Conj": "and", "Disj": "or"}


def _is_id(x) -> bool:
    return isinstance(x, (Hole, Label, Marker, Param))


def _cond_fact(lab, cond) -> tuple:
    tag = _TAGS[type(cond).__name__]
    if tag == "pred":
        return ("pred", cond.rel, len(cond.args), lab, *cond.args)
    if tag == "dm":
        return ("dm", lab, cond.x)
    return (tag, lab, *cond.refs)


def condition_facts(u: LudRepr) -> set:
    return {_cond_fact(lab, cond) for lab, cond in u.conditions}


def facts(u: LudRepr) -> set:
    out = {("hole", h) for h in u.holes}
    out |= condition_facts(u)
    for c in u.constraints:
        out.add((type(c).__name__.lower(), *c.operands))
    out.add(("context", *u.context))
    for i, ctx in enumerate(u.subcat):
        out.add(("subcat", i, *ctx))
    return out


def _sort_of(x) -> str:
    if isinstance(x, Param):
        return x.sort
    return {Hole: "hole", Label: "label", Marker: "marker"}[type(x)]


def _compatible(a, b, flexible: bool) -> bool:
    if not _is_id(a) or not _is_id(b):
        return not _is_id(a) and not _is_id(b) and a == b
    if flexible and isinstance(a, Param):
        return _sort_of(a) == _sort_of(b)
    if type(a) is not type(b):
        return False
    if isinstance(a, Marker):
        return a.kind == b.kind
    if isinstance(a, Param):
        return a.sort == b.sort
    return True


def _match(src: set, dst: set, flexible: bool) -> Optional[dict]:
    """Backtracking search for an identifier map sending every src fact into dst."""
    src = sorted(src, key=repr)
    by_shape = {}
    for f in dst:
        by_shape.setdefault((f[0], len(f)) if f[0] != "pred" else f[:3], []).append(f)

    def shape(f):
        return (f[0], len(f)) if f[0] != "pred" else f[:3]

    fwd, back = {}, {}

    def consistent(f, g):
        local = {}
        for a, b in zip(f, g):
            if not _compatible(a, b, flexible):
                return None
            if not _is_id(a):
                continue
            cur = fwd.get(a, local.get(a))
            if cur is not None:
                if cur != b:
                    return None
                continue
            if not (flexible and isinstance(a, Param)):
                owner = back.get(b)
                if owner is None:
                    owner = next((k for k, v in local.items() if v == b and not
                                  (flexible and isinstance(k, Param))), None)
                if owner is not None and owner != a:
                    return None
            local[a] = b
        return local

    used = set()

    def search(remaining):
        if not remaining:
            return True
        best, best_cands = None, None
        for f in remaining:
            cands = []
            for g in by_shape.get(shape(f), ()):
                if g in used:
                    continue
                local = consistent(f, g)
                if local is not None:
                    cands.append((g, local))
            if best is None or len(cands) < len(best_cands):
                best, best_cands = f, cands
            if not cands:
                return False
        rest = [f for f in remaining if f is not best]
        for g, local in best_cands:
            for a, b in local.items():
                fwd[a] = b
                if not (flexible and isinstance(a, Param)):
                    back[b] = a
            used.add(g)
            if search(rest):
                return True
            used.discard(g)
            for a, b in local.items():
                del fwd[a]
                if back.get(b) == a:
                    del back[b]
        return False

    return dict(fwd) if search(src) else None


def isomorphism(u1: LudRepr, u2: LudRepr) -> Optional[dict]:
    """A consistent renaming of identifiers turning ``u1`` into ``u2``, or None."""
    f1, f2 = facts(u1), facts(u2)
    if len(f1) != len(f2):
        return None
    ids1 = {x for f in f1 for x in f if _is_id(x)}
    ids2 = {x for f in f2 for x in f if _is_id(x)}
    if len(ids1) != len(ids2):
        return None
    return _match(f1, f2, flexible=False)


def isomorphic(u1: LudRepr, u2: LudRepr) -> bool:
    return isomorphism(u1, u2) is not None


def condition_embedding(src: LudRepr, dst: LudRepr) -> Optional[dict]:
    """Injective, structure-preserving map from src's conditions into dst's.

    Ground identifiers map injectively; parameters of ``src`` may be sent to
    whatever they were bound to.
    """
    return _match(condition_facts(src), condition_facts(dst), flexible=True)
