from collections import Counter

import pytest

from dgoim.decomposition import check_instance, instances
from dgoim.graph import AX, BANG, CON, HOLE
from dgoim.parser import parse, parse_term
from dgoim.terms import HOLE as EMPTY, fv
from dgoim.translation import translate_ctx, translate_term

from conftest import DUP, ID_ID


def test_identity_has_one_open_edge_and_one_box():
    og = translate_term(parse(r"\z. z"))
    assert og.graph.open_edges() == [og.conclusion]
    assert len(og.graph.boxes) == 1


def test_one_box_per_abstraction():
    og = translate_term(parse(ID_ID))
    assert len(og.graph.boxes) == 2
    assert og.graph.well_boxed_check() is None


def test_variable_is_an_axiom_with_one_free_edge():
    t = parse_term("x")
    og = translate_term(t)
    (x,) = fv(t)
    assert list(og.graph.kind.values()) == [AX]
    assert len(og.free[x]) == 1 and og.open_edge_count() == 2


def test_unused_binder_gets_a_nullary_contraction():
    g = translate_term(parse(r"\x. \y. y")).graph
    arities = sorted(len(g.ins[n]) for n, k in g.kind.items() if k == CON)
    assert arities == [0, 1]


def test_shared_binder_gets_a_binary_contraction():
    g = translate_term(parse(DUP)).graph
    assert 2 in [len(g.ins[n]) for n, k in g.kind.items() if k == CON]


def test_free_variables_of_a_box_leave_through_whynot_doors():
    og = translate_term(parse_term(r"\z. a a"))
    g = og.graph
    (p,) = g.boxes
    assert len(g.boxes[p].aux) == 2
    assert sum(len(v) for v in og.free.values()) == 2


def test_empty_context_is_the_identity_fragment():
    t = parse_term("x y")
    c = translate_ctx(EMPTY, fv(t))
    g = c.graph
    assert c.conclusion == (c.hole, 0)
    assert list(g.kind.values()) == [HOLE]
    assert sorted(len(v) for v in c.free.values()) == [1, 1]


@pytest.mark.parametrize("inst", instances(seed=3, n=40), ids=lambda i: "")
def test_decomposition_properties(inst):
    assert all(check_instance(inst).values()), check_instance(inst)


def test_some_instances_capture_occurrences():
    insts = instances(seed=3, n=40)
    assert any(i["M0_captured"] for i in insts)
    assert any(i["E2"] and i["E"] for i in insts)


def test_bang_count_matches_values_in_random_terms():
    from random import Random

    from dgoim.corpus import random_term
    from dgoim.terms import NameSupply

    rng = Random(9)
    for _ in range(30):
        t = random_term(rng, 30, NameSupply())
        lams = str(t).count("\\")
        g = translate_term(t).graph
        assert sum(1 for k in g.kind.values() if k == BANG) == lams
        assert g.well_boxed_check() is None
