import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import reference_das_geht, jeder_termin_geht, two_quantifiers
from generators import random_composition_step, random_np, random_template
from lud import (
    Conj, Context, Dm, Hole, IdGenerator, Imp, Label, Leq, LudRepr, Marker, Param, Pred,
    Presup, condition_embedding, free_labels, fun_arg_apply, isomorphic, lex_demonstrative,
    lex_indefinite, lex_intransitive, lex_noun, lex_transitive, lex_universal, lud_merge,
    with_mood, well_formed,
)
from lud.composition import LexEntry, unify_contexts
from lud.errors import ArityError, BindingClash, EmptySubcat

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def das_geht_composed(ids=None):
    ids = ids or IdGenerator()
    return fun_arg_apply(lex_intransitive("gehen", "theme", ids), lex_demonstrative(ids))


# the lexical rows


def test_termin_row():
    X = Param("X", "marker")
    li = Label("li")
    row = LudRepr(conditions={li: Pred("termin", (X,))}, context=Context(X, li, None))
    u = lex_noun("termin", IdGenerator())
    assert isomorphic(u, row)
    assert not u.holes and not u.constraints
    assert free_labels(u) == {u.context.main}


def test_geht_row():
    Y = Param("Y", "marker")
    e = Marker("e", "event")
    hl, li, lj, lk = Hole("hl"), Label("li"), Label("lj"), Label("lk")
    row = LudRepr(
        holes={hl},
        conditions={li: Pred("gehen", (e,)), lj: Pred("theme", (e, Y)), lk: Conj(li, lj)},
        constraints={Leq(lk, hl)},
        context=Context(e, lk, hl),
        subcat=(Context(Y, lk, hl),),
    )
    u = lex_intransitive("gehen", "theme", IdGenerator())
    assert isomorphic(u, row)
    assert free_labels(u) == {u.context.main}


def test_das_row():
    z = Marker("z")
    li = Label("li")
    M, T = Param("M", "label"), Param("T", "hole")
    row = LudRepr(conditions={li: Dm(z)}, constraints={Presup(li, M)}, context=Context(z, M, T))
    u = lex_demonstrative(IdGenerator())
    assert isomorphic(u, row)
    assert free_labels(u) == frozenset()


def test_jeder_row():
    x = Marker("x")
    hi, lj, lk, ll = Hole("hi"), Label("lj"), Label("lk"), Label("ll")
    P, Qm, Qt = Param("P", "label"), Param("Qm", "label"), Param("Qt", "hole")
    row = LudRepr(
        holes={hi},
        conditions={lj: Dm(x), lk: Conj(lj, P), ll: Imp(lk, hi)},
        constraints={Leq(ll, Qt), Leq(Qm, hi)},
        context=Context(x, Qm, Qt),
        subcat=(Context(x, P, None),),
    )
    assert isomorphic(lex_universal(IdGenerator()), row)


def test_das_geht_row():
    assert isomorphic(das_geht_composed(), reference_das_geht())


def test_das_geht_is_the_merge_of_its_parts():
    ids = IdGenerator()
    verb, np = lex_intransitive("gehen", "theme", ids), lex_demonstrative(ids)
    u = fun_arg_apply(verb, np)
    assert len(u.conditions) == 4
    assert condition_embedding(verb, u) is not None
    assert condition_embedding(np, u) is not None


def test_two_calls_are_disjoint():
    ids = IdGenerator()
    a, b = lex_intransitive("gehen", "theme", ids), lex_intransitive("gehen", "theme", ids)
    assert not set(a.identifiers()) & set(b.identifiers())


# lud_merge


def test_merge_keeps_left_context(das_geht):
    other = lex_noun("termin", IdGenerator())
    u = lud_merge(das_geht, other)
    assert u.context == das_geht.context
    assert len(u.conditions) == len(das_geht.conditions) + 1


def test_merge_with_empty(das_geht):
    assert isomorphic(lud_merge(das_geht, LudRepr()), das_geht)


def test_merge_renames_clashes(das_geht):
    u = lud_merge(das_geht, das_geht)
    assert len(u.conditions) == 8 and len(u.holes) == 2
    assert well_formed(u) == []


# fun_arg_apply


def test_apply_decrements_subcat():
    ids = IdGenerator()
    verb = lex_transitive("vereinbaren", ["theme", "agent"], ids)
    assert len(verb.subcat) == 2
    once = fun_arg_apply(verb, lex_demonstrative(ids))
    assert len(once.subcat) == 1
    twice = fun_arg_apply(once, lex_demonstrative(ids))
    assert twice.subcat == ()


def test_transitive_binds_both_roles():
    ids = IdGenerator()
    verb = lex_transitive("vereinbaren", ["theme", "agent"], ids)
    obj, subj = lex_demonstrative(ids), lex_demonstrative(ids)
    u = fun_arg_apply(fun_arg_apply(verb, obj), subj)
    roles = {c.rel: c.args[1] for _, c in u.conditions if isinstance(c, Pred) and len(c.args) == 2}
    dms = {c.x for _, c in u.conditions if isinstance(c, Dm) and c.x.kind == "entity"}
    assert set(roles) == {"theme", "agent"}
    assert set(roles.values()) == dms
    assert not u.params
    assert well_formed(u) == []


def test_transitive_shape():
    u = lex_transitive("vorschlagen", ["agent", "theme"], IdGenerator())
    atoms = [c for _, c in u.conditions if not isinstance(c, Conj)]
    assert sorted(type(c).__name__ for c in atoms) == ["Dm", "Pred", "Pred", "Pred"]
    assert free_labels(u) == {u.context.main}
    assert len(u.subcat) == 2


def test_transitive_arity():
    with pytest.raises(ArityError):
        lex_transitive("geben", ["agent", "theme", "recipient"], IdGenerator())


def test_empty_subcat():
    with pytest.raises(EmptySubcat):
        fun_arg_apply(lex_demonstrative(IdGenerator()), lex_noun("termin", IdGenerator()))


def test_binding_clash():
    ids = IdGenerator()
    # a marker parameter cannot take a label, and ground identifiers must agree
    with pytest.raises(BindingClash):
        unify_contexts(Context(Param("X", "marker"), None, None), Context(Label("l1"), None, None))
    with pytest.raises(BindingClash):
        unify_contexts(Context(Marker("x"), None, None), Context(Marker("y"), None, None))
    # a bare noun brings its own main label where the verb expects to supply one
    with pytest.raises(BindingClash):
        fun_arg_apply(lex_intransitive("gehen", "theme", ids), lex_noun("termin", ids))


def test_universal_binds_the_restrictor():
    u = fun_arg_apply(lex_universal(IdGenerator()), lex_noun("termin", IdGenerator()))
    [dm] = [c for _, c in u.conditions if isinstance(c, Dm)]
    [noun] = [c for _, c in u.conditions if isinstance(c, Pred)]
    assert noun.args == (dm.x,)
    assert u.context.instance == dm.x


def test_jeder_termin_geht_free_labels():
    u = jeder_termin_geht()
    free = free_labels(u)
    assert {type(u.cond[lab]) for lab in free} == {Imp, Conj}
    assert len(free) == len(u.holes) == 2


def test_indefinite_mirrors_universal():
    a, b = lex_universal(IdGenerator()), lex_indefinite(IdGenerator())
    swapped = b.replace(conditions={
        lab: Imp(c.a, c.b) if isinstance(c, Conj) and isinstance(c.b, Hole) else c
        for lab, c in b.conditions})
    assert not isomorphic(a, b)
    assert isomorphic(a, swapped)


def test_saturated_templates_are_well_formed():
    for u in (das_geht_composed(), jeder_termin_geht(), two_quantifiers()):
        assert well_formed(u) == []
        assert not u.subcat and not u.params
        assert len(u.holes) == len(free_labels(u))


def test_with_mood():
    u, mood = with_mood(jeder_termin_geht())
    assert well_formed(u) == []
    assert isinstance(u.cond[mood], Conj)
    assert Leq(mood, u.context.top) in u.constraints
    with pytest.raises(ValueError):
        with_mood(lex_noun("termin", IdGenerator()))


def test_lex_entry_instantiates_fresh_copies():
    entry = LexEntry("vereinbart", "v", "transitive", ("vereinbaren", "theme", "agent"), {"val": "tr"})
    ids = IdGenerator()
    a, b = entry.instantiate(ids), entry.instantiate(ids)
    assert isomorphic(a, b)
    assert not set(a.identifiers()) & set(b.identifiers())
    with pytest.raises(ValueError):
        LexEntry("x", "n", "adverb")


# properties


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_composition_is_monotone(seed):
    inputs, out = random_composition_step(random.Random(seed))
    for u in inputs:
        assert condition_embedding(u, out) is not None


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_apply_shortens_subcat_by_one(seed):
    rng = random.Random(seed)
    ids = IdGenerator()
    verb = random_template(rng, ids)
    if not verb.subcat:
        return
    np = random_np(rng, ids)
    try:
        out = fun_arg_apply(verb, np)
    except BindingClash:
        return
    assert len(out.subcat) == len(verb.subcat) - 1
    assert out.context == verb.context or isomorphic(
        LudRepr(context=out.context), LudRepr(context=verb.context))


def _swap_rels(u, table):
    return u.replace(conditions={
        lab: Pred(table.get(c.rel, c.rel), c.args) if isinstance(c, Pred) else c
        for lab, c in u.conditions})


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_only_the_argument_context_matters(seed):
    rng = random.Random(seed)
    ids = IdGenerator()
    verb = lex_transitive("vereinbaren", ["theme", "agent"], ids)
    arg = random_np(rng, ids)
    alt = _swap_rels(arg, {"p": "q", "q": "r", "r": "termin", "termin": "datum", "datum": "p"})
    out, out_alt = fun_arg_apply(verb, arg), fun_arg_apply(verb, alt)
    assert out.holes == out_alt.holes
    assert out.constraints == out_alt.constraints
    assert out.context == out_alt.context and out.subcat == out_alt.subcat
    changed = {lab for (lab, c), (_, d) in zip(out.conditions, out_alt.conditions) if c != d}
    nouns = {lab for lab, c in out.conditions if isinstance(c, Pred) and c.rel not in ("vereinbaren", "theme", "agent")}
    assert changed <= nouns
