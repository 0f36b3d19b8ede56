import random
import threading

import pytest
from hypothesis import given, settings, strategies as st

from conftest import h0, jeder_termin_geht, l4, l5, l6, l7
from generators import random_lud
from lud import (
    Conj, Context, Dm, Hole, IdGenerator, Imp, Label, Leq, Lt, LudRepr, Marker, Pred,
    free_labels, isomorphic, rename_apart, structural_order, subordination_closure,
    top, well_formed,
)
from lud.errors import AmbiguousTop, CycleDetected, NoTop
from lud.model import Diagnostic, Param, natural_key

l1, l2 = Label("l1"), Label("l2")
x = Marker("x")


def test_natural_key_orders_numbers():
    assert sorted(["l10", "l2", "l1"], key=natural_key) == ["l1", "l2", "l10"]
    assert sorted([Label("l10"), Hole("h3"), Label("l9")]) == [Hole("h3"), Label("l9"), Label("l10")]


def test_pred_needs_arguments():
    with pytest.raises(ValueError):
        Pred("termin", ())


def test_marker_kind_is_checked():
    with pytest.raises(ValueError):
        Marker("x", "thing")


# well_formed


def test_reference_is_well_formed(das_geht):
    assert well_formed(das_geht) == []


def test_empty_representation_is_well_formed():
    assert well_formed(LudRepr()) == []


def test_self_embedding_and_dangling():
    u = LudRepr(conditions={l1: Conj(l1, l2)}, context=Context(None, l1, None))
    assert well_formed(u) == [Diagnostic("self-embedding", l1), Diagnostic("dangling", l2)]


def test_duplicate_label_and_hole_as_label():
    u = LudRepr(conditions=[(l1, Pred("p", (x,))), (l1, Pred("q", (x,))), (h0, Dm(x))])
    codes = [d.code for d in well_formed(u)]
    assert "duplicate-label" in codes
    assert "hole-as-label" in codes


def test_leq_with_label_on_the_right():
    u = LudRepr(conditions={l1: Pred("p", (x,)), l2: Pred("q", (x,))}, constraints={Leq(l1, l2)})
    assert [d.code for d in well_formed(u)] == ["leq-not-hole"]


def test_structural_cycle_is_reported():
    u = LudRepr(conditions={l1: Imp(l2, l2), l2: Conj(l1, l1)})
    assert [d.code for d in well_formed(u)] == ["cycle"]


def test_unbound_parameter():
    y = Param("Y", "marker")
    u = LudRepr(conditions={l1: Pred("theme", (x, y))})
    assert [d.code for d in well_formed(u)] == ["unbound-parameter"]
    bound = u.replace(subcat=(Context(y, None, None),))
    assert well_formed(bound) == []


def test_signature_arity():
    u = LudRepr(conditions={l1: Pred("termin", (x, x))})
    assert well_formed(u, signature={"termin": 1}) == [Diagnostic("arity", l1)]
    assert well_formed(u, signature={"termin": 2}) == []


# structural_order


def test_structural_order_conjunction():
    u = LudRepr(conditions={Label("l5"): Pred("p", (x,)), Label("l6"): Pred("q", (x,)),
                            l7: Conj(Label("l5"), Label("l6"))})
    assert structural_order(u) == {(l5, l7), (l6, l7)}


def test_structural_order_jeder_entry():
    ll, lk, lj, lm, hi = Label("ll"), Label("lk"), Label("lj"), Label("lm"), Hole("hi")
    u = LudRepr(holes={hi}, conditions={ll: Imp(lk, hi), lk: Conj(lj, lm),
                                        lj: Dm(x), lm: Pred("termin", (x,))})
    assert structural_order(u) == {(lk, ll), (hi, ll), (lj, lk), (lm, lk)}


def test_structural_order_atomic_only():
    u = LudRepr(conditions={l1: Pred("p", (x,)), l2: Dm(x)})
    assert structural_order(u) == frozenset()


def test_structural_order_cycle():
    with pytest.raises(CycleDetected):
        structural_order(LudRepr(conditions={l1: Conj(l2, l2), l2: Conj(l1, l1)}))


# subordination_closure


def _refl(*nodes):
    return {(n, n) for n in nodes}


def test_closure_das_geht(das_geht):
    order = subordination_closure(das_geht)
    # hand-computed: structural pairs, l7 <= h0, and transitivity through l7
    expected = _refl(h0, l4, l5, l6, l7) | {
        (l5, l7), (l6, l7), (l7, h0), (l5, h0), (l6, h0)}
    assert order.pairs == expected
    assert order.antisymmetric


def test_closure_das_geht_with_plugging(das_geht):
    order = subordination_closure(das_geht, {h0: l7})
    assert (l7, h0) in order
    assert order.pairs == subordination_closure(das_geht).pairs
    assert order.antisymmetric


def test_closure_reports_cycle():
    u = LudRepr(conditions={l1: Pred("p", (x,)), l2: Pred("q", (x,))},
                constraints={Lt(l1, l2), Lt(l2, l1)})
    assert not subordination_closure(u).antisymmetric


# top


def test_top_das_geht(das_geht):
    assert top(das_geht) == h0


def test_top_single_condition():
    assert top(LudRepr(conditions={l1: Pred("termin", (x,))})) == l1


def test_top_ambiguous():
    u = LudRepr(conditions={l1: Pred("p", (x,)), l2: Pred("q", (x,))})
    with pytest.raises(AmbiguousTop):
        top(u)


def test_top_cyclic_and_empty():
    u = LudRepr(conditions={l1: Pred("p", (x,)), l2: Pred("q", (x,))},
                constraints={Lt(l1, l2), Lt(l2, l1)})
    with pytest.raises(NoTop):
        top(u)
    with pytest.raises(NoTop):
        top(LudRepr())


# free_labels


def test_free_labels_das_geht(das_geht):
    assert free_labels(das_geht) == {l7}


def test_free_labels_jeder_termin_geht():
    u = jeder_termin_geht()
    free = free_labels(u)
    kinds = sorted(type(u.cond[lab]).__name__ for lab in free)
    assert kinds == ["Conj", "Imp"]
    assert u.context.main in free


def test_free_labels_empty():
    assert free_labels(LudRepr()) == frozenset()


# rename_apart


def test_rename_apart_self(das_geht):
    a, b = rename_apart(das_geht, das_geht)
    names_a = {(type(i), i.name) for i in a.identifiers()}
    names_b = {(type(i), i.name) for i in b.identifiers()}
    assert not names_a & names_b
    assert isomorphic(a, das_geht) and isomorphic(b, das_geht)


def test_rename_apart_only_touches_clashes():
    u1 = LudRepr(conditions={l1: Pred("p", (x,))})
    u2 = LudRepr(conditions={l1: Pred("q", (Marker("y"),)), l2: Dm(Marker("y"))})
    _, b = rename_apart(u1, u2)
    assert l2 in b.labels and l1 not in b.labels
    assert isomorphic(b, u2)


def test_rename_apart_disjoint_is_identity(das_geht):
    other = LudRepr(conditions={Label("m1"): Pred("p", (Marker("w"),))})
    a, b = rename_apart(das_geht, other)
    assert a == das_geht and b == other


# fresh identifiers


def test_id_generator_is_thread_safe():
    ids = IdGenerator()
    out = []

    def work():
        out.extend(ids.label() for _ in range(500))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(out)) == 4000


def test_id_generator_is_deterministic():
    a, b = IdGenerator(), IdGenerator()
    assert [a.label(), a.hole(), a.marker("event")] == [b.label(), b.hole(), b.marker("event")]


# properties

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_random_representations_are_acyclic(seed):
    u = random_lud(random.Random(seed))
    assert well_formed(u) == []
    order = structural_order(u)
    assert all(a != b for a, b in order)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_free_labels_are_not_arguments(seed):
    u = random_lud(random.Random(seed))
    args = {a for _, c in u.conditions for a in c.refs}
    assert not free_labels(u) & args


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_top_is_not_subordinated(seed):
    u = random_lud(random.Random(seed))
    try:
        t = top(u)
    except (NoTop, AmbiguousTop):
        return
    assert all(c.operands[0] != t for c in u.constraints if isinstance(c, (Leq, Lt)))


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_rename_apart_preserves_invariants(seed):
    u = random_lud(random.Random(seed))
    _, v = rename_apart(u, u)
    assert well_formed(v) == []
    assert len(free_labels(v)) == len(free_labels(u))
    assert isomorphic(u, v)
    try:
        t = top(u)
    except (NoTop, AmbiguousTop) as exc:
        with pytest.raises(type(exc)):
            top(v)
    else:
        assert type(top(v)) is type(t)


@settings(max_examples=100, deadline=None)
@given(seeds, st.data())
def test_closure_is_monotone(seed, data):
    rng = random.Random(seed)
    u = random_lud(rng)
    labels = sorted(u.labels)
    if not labels:
        return
    if u.holes and data.draw(st.booleans()):
        extra = Leq(data.draw(st.sampled_from(labels)), data.draw(st.sampled_from(sorted(u.holes))))
    else:
        extra = Lt(data.draw(st.sampled_from(labels)), data.draw(st.sampled_from(labels)))
    bigger = u.replace(constraints=u.constraints | {extra})
    assert subordination_closure(u).pairs <= subordination_closure(bigger).pairs
