"""
Semantic composition over LUD representations.

Lambda abstraction is expressed by subcat lists: each entry is the context
a functor expects from its next argument. Applying a functor unifies that
entry with the argument's context and merges the two representations;
conditions are only ever renamed or have parameters filled in.

Argument contexts of verbs carry the verb's own main label and top hole, so
that noun phrases learn where they attach: a demonstrative presupposes
relative to its host's main label, a quantifier scopes over it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .errors import ArityError, BindingClash, EmptySubcat
from .model import (
    Conj, Context, Dm, Hole, IdGenerator, Imp, Label, Leq, LudRepr, Marker,
    Param, Pred, Presup, map_ids, rename_apart,
)

__all__ = [
    "lud_merge", "fun_arg_apply", "unify_contexts",
    "lex_intransitive", "lex_transitive", "lex_universal", "lex_indefinite",
    "lex_noun", "lex_demonstrative", "with_mood", "MACROS", "default_ids",
    "LexEntry",
]

default_ids = IdGenerator()


def lud_merge(u1: LudRepr, u2: LudRepr) -> LudRepr:
    """Disjoint union of two representations; context comes from ``u1``."""
    u1, u2 = rename_apart(u1, u2)
    return LudRepr(
        holes=u1.holes | u2.holes,
        conditions=u1.conditions + u2.conditions,
        constraints=u1.constraints | u2.constraints,
        context=u1.context,
        subcat=u1.subcat + u2.subcat,
    )


def _fits(param: Param, value) -> bool:
    if isinstance(value, Param):
        return value.sort == param.sort
    want = {"marker": Marker, "label": Label, "hole": Hole}[param.sort]
    return isinstance(value, want)


def _resolve(binding: dict, x):
    while isinstance(x, Param) and x in binding:
        x = binding[x]
    return x


def unify_contexts(expected: Context, actual: Context, binding: Optional[dict] = None) -> dict:
    """Slot-wise unification of two contexts; returns the parameter binding.

    Anonymous slots (None) unify with anything. Raises BindingClash when two
    distinct ground identifiers, or values of different sorts, meet.
    """
    binding = dict(binding or {})
    for a, b in zip(expected, actual):
        if a is None or b is None:
            continue
        a, b = _resolve(binding, a), _resolve(binding, b)
        if a == b:
            continue
        if isinstance(a, Param) and _fits(a, b):
            binding[a] = b
        elif isinstance(b, Param) and _fits(b, a):
            binding[b] = a
        else:
            raise BindingClash(f"cannot unify {a} with {b}")
    return binding


def fun_arg_apply(fun: LudRepr, arg: LudRepr) -> LudRepr:
    """Apply ``fun`` to ``arg``: consume the head of ``fun.subcat``.

    The result keeps the functor's context; its subcat list is the rest of
    the functor's.
    """
    if not fun.subcat:
        raise EmptySubcat("functor has nothing left to apply to")
    fun, arg = rename_apart(fun, arg)
    binding = unify_contexts(fun.subcat[0], arg.context)
    merged = LudRepr(
        holes=fun.holes | arg.holes,
        conditions=fun.conditions + arg.conditions,
        constraints=fun.constraints | arg.constraints,
        context=fun.context,
        subcat=fun.subcat[1:],
    )
    return map_ids(merged, lambda x: _resolve(binding, x))


# ---------------------------------------------------------------------------
# lexical macros


def lex_noun(rel: str, ids: Optional[IdGenerator] = None) -> LudRepr:
    """``λx. l: rel(x)``"""
    ids = ids or default_ids
    x = ids.param("marker")
    l = ids.label()
    return LudRepr(conditions={l: Pred(rel, (x,))}, context=Context(x, l, None))


def lex_intransitive(rel: str, role: str, ids: Optional[IdGenerator] = None) -> LudRepr:
    """Neo-Davidsonian intransitive verb: ``rel(e) ∧ role(e, y)`` below the top hole."""
    ids = ids or default_ids
    e = ids.marker("event")
    h = ids.hole()
    y = ids.param("marker")
    l_rel, l_role, main = ids.label(), ids.label(), ids.label()
    return LudRepr(
        holes={h},
        conditions={
            l_rel: Pred(rel, (e,)),
            l_role: Pred(role, (e, y)),
            main: Conj(l_rel, l_role),
        },
        constraints={Leq(main, h)},
        context=Context(e, main, h),
        subcat=(Context(y, main, h),),
    )


def _group(labels: Sequence[Label], ids: IdGenerator) -> tuple[dict, Label]:
    # right-nested chain of binary conjunctions; returns new conditions and the group label
    conds = {}
    acc = labels[-1]
    for lab in reversed(labels[:-1]):
        g = ids.label()
        conds[g] = Conj(lab, acc)
        acc = g
    return conds, acc


def lex_transitive(rel: str, roles: Sequence[str], ids: Optional[IdGenerator] = None) -> LudRepr:
    """Neo-Davidsonian transitive verb: ``rel(e) ∧ dm(e) ∧ role1(e, obj) ∧ role2(e, subj)``.

    ``roles[0]`` links the event to the first argument taken (the object),
    ``roles[1]`` to the second (the subject).
    """
    if len(roles) != 2:
        raise ArityError(f"a transitive verb takes two roles, got {len(roles)}")
    ids = ids or default_ids
    e = ids.marker("event")
    h = ids.hole()
    a1, a2 = ids.param("marker"), ids.param("marker")
    l1, l2, arg_l1, arg_l2 = ids.label(), ids.label(), ids.label(), ids.label()
    conds = {
        l1: Pred(rel, (e,)),
        l2: Dm(e),
        arg_l1: Pred(roles[0], (e, a1)),
        arg_l2: Pred(roles[1], (e, a2)),
    }
    group, main = _group([l1, l2, arg_l1, arg_l2], ids)
    conds.update(group)
    return LudRepr(
        holes={h},
        conditions=conds,
        constraints={Leq(main, h)},
        context=Context(e, main, h),
        subcat=(Context(a1, main, h), Context(a2, main, h)),
    )


def _quantifier(connective, ids: IdGenerator) -> LudRepr:
    x = ids.marker("entity")
    scope = ids.hole()
    restr_main = ids.param("label")
    scope_main, scope_top = ids.param("label"), ids.param("hole")
    l_dm, l_restr, l_q = ids.label(), ids.label(), ids.label()
    return LudRepr(
        holes={scope},
        conditions={
            l_dm: Dm(x),
            l_restr: Conj(l_dm, restr_main),
            l_q: connective(l_restr, scope),
        },
        constraints={Leq(l_q, scope_top), Leq(scope_main, scope)},
        context=Context(x, scope_main, scope_top),
        subcat=(Context(x, restr_main, None),),
    )


def lex_universal(ids: Optional[IdGenerator] = None) -> LudRepr:
    """Universal determiner: ``l_q: (dm(x) ∧ main(P)) → h``.

    Takes the restrictor noun through its subcat list; the scope's main
    label and top hole arrive through the context when the noun phrase is
    consumed by a verb.
    """
    return _quantifier(Imp, ids or default_ids)


def lex_indefinite(ids: Optional[IdGenerator] = None) -> LudRepr:
    """Indefinite determiner: as :func:`lex_universal` with ``∧`` for ``→``."""
    return _quantifier(Conj, ids or default_ids)


def lex_demonstrative(ids: Optional[IdGenerator] = None) -> LudRepr:
    """``l: dm(z)`` presupposed relative to the main label of its host."""
    ids = ids or default_ids
    z = ids.marker("entity")
    l = ids.label()
    host_main, host_top = ids.param("label"), ids.param("hole")
    return LudRepr(
        conditions={l: Dm(z)},
        constraints={Presup(l, host_main)},
        context=Context(z, host_main, host_top),
    )


def _fresh(make, taken: set):
    for _ in itertools.count():
        x = make()
        if x.name not in taken:
            return x


def with_mood(u: LudRepr, rel: str = "assert", ids: Optional[IdGenerator] = None) -> tuple[LudRepr, Label]:
    """Decorate a saturated sentence with a mood operator.

    Adds ``l_m: rel(i) ∧ h_m`` with ``l_m <= top`` and ``main <= h_m``;
    returns the new representation and ``l_m``.
    """
    ids = ids or IdGenerator()
    inst, main, top_hole = u.context
    if not isinstance(top_hole, Hole) or not isinstance(main, Label) or not isinstance(inst, Marker):
        raise ValueError("mood needs a saturated representation with a top hole")
    taken = {i.name for i in u.identifiers()}
    h_m = _fresh(ids.hole, taken)
    l_p = _fresh(ids.label, taken)
    l_m = _fresh(ids.label, taken)
    conds = dict(u.conditions)
    conds[l_p] = Pred(rel, (inst,))
    conds[l_m] = Conj(l_p, h_m)
    out = u.replace(
        holes=u.holes | {h_m},
        conditions=conds,
        constraints=u.constraints | {Leq(l_m, top_hole), Leq(main, h_m)},
    )
    return out, l_m


MACROS = {
    "noun": lex_noun,
    "intransitive": lex_intransitive,
    "transitive": lex_transitive,
    "universal": lex_universal,
    "indefinite": lex_indefinite,
    "demonstrative": lex_demonstrative,
}


@dataclass(frozen=True)
class LexEntry:
    """A full-form lexicon entry: surface form, category, features, and the
    macro (name plus arguments) that builds its semantics."""

    form: str
    category: str
    macro: str
    args: tuple = ()
    features: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.macro not in MACROS:
            raise ValueError(f"unknown semantic macro {self.macro!r}")
        object.__setattr__(self, "args", tuple(self.args))
        object.__setattr__(self, "features", dict(self.features))

    def __hash__(self):
        return hash((self.form, self.category, self.macro, self.args,
                     tuple(sorted(self.features.items()))))

    def instantiate(self, ids: Optional[IdGenerator] = None) -> LudRepr:
        """A fresh copy of the entry's semantic template."""
        args = list(self.args)
        if self.macro == "transitive":
            args = [args[0], args[1:]]
        return MACROS[self.macro](*args, ids=ids)
