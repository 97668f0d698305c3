import pytest

from dgoim.graph import AX, CUT, DOWN, TENSOR, UP
from dgoim.machine import (
    HistoryEntry, MachineState, dgoim_run, initial_state, pass_step, rewrite_step, rooted_check,
    step_rewrites_first,
)
from dgoim.parser import parse, parse_term

from conftest import DUP, ID_ID, K_ID, OMEGA

CHURCH2 = r"(\f. \x. f (f x)) (\y. y) (\z. z)"


def deltas(src):
    """(rule, node delta, transition) for every step of a run."""
    s = initial_state(parse(src))
    out = []
    while True:
        n = s.graph.node_count()
        tr = step_rewrites_first(s)
        if tr is None:
            return out, s
        out.append((tr.rule, s.graph.node_count() - n, tr))


def test_initial_state_sits_on_the_root():
    s = initial_state(parse(r"\z. z"))
    assert s.history == [] and s.mult == []
    assert s.position == (s.graph.root, UP)
    assert rooted_check(s)


def test_initial_state_rejects_open_terms():
    with pytest.raises(ValueError):
        initial_state(parse_term("x"))


def test_tensor_pass_pops_the_multiplicative_stack():
    s = initial_state(parse(ID_ID))
    g = s.graph
    ten = next(n for n, k in g.kind.items() if k == TENSOR)
    s.position, s.mult = ((ten, 0), UP), ["r", "l"]
    tr = pass_step(s)
    assert tr.rule == "pass-Tensor"
    assert s.position == (g.ins[ten][0], UP)
    assert s.mult == ["r"] and s.history[-1].kind == TENSOR


def test_tensor_pass_needs_a_stack_element():
    s = initial_state(parse(ID_ID))
    ten = next(n for n, k in s.graph.kind.items() if k == TENSOR)
    s.position = ((ten, 0), UP)
    assert pass_step(s) is None


def test_identity_application_costs():
    r = dgoim_run(parse(ID_ID))
    assert r.halted
    assert (r.stats.b, r.stats.s, r.stats.o, r.stats.total) == (1, 1, 13, 15)


def test_value_halts_after_one_pass():
    r = dgoim_run(parse(r"\z. z"))
    assert r.halted and r.stats.total == 1
    assert r.stats.per_rule["pass-Bang"] == 1


def test_omega_exhausts_fuel():
    r = dgoim_run(parse(OMEGA), fuel=2000)
    assert not r.halted and r.stats.total == 2000


def test_cut_axiom_rule_removes_two_nodes():
    steps, _ = deltas(DUP)
    assert {d for rule, d, _ in steps if rule == "1"} == {-2}


def test_unary_contraction_rule_removes_one_node():
    steps, _ = deltas(CHURCH2)
    assert {d for rule, d, _ in steps if rule == "7"} == {-1}


def test_copy_rule_adds_the_copied_box_and_one_cut():
    steps, _ = deltas(CHURCH2)
    sixes = [(d, tr) for rule, d, tr in steps if rule == "6"]
    assert sixes
    for d, tr in sixes:
        assert d == tr.nodes_copied + tr.doors + 1
        assert tr.cost == 1 + tr.nodes_copied + tr.doors


def test_open_box_rule_removes_doors_and_dereliction():
    steps, _ = deltas(CHURCH2)
    fours = [(d, tr) for rule, d, tr in steps if rule == "4"]
    assert any(tr.doors > 1 for _, tr in fours)
    for d, tr in fours:
        assert d == -(tr.doors + 1)
        assert tr.cost == 1 + tr.doors


def test_copies_match_their_initial_box():
    s = initial_state(parse(CHURCH2))
    before = {p: s.graph.box_canonical(p) for p in s.graph.boxes}
    seen = 0
    while (tr := step_rewrites_first(s)) is not None:
        if tr.rule == "6":
            seen += 1
            new = s.history[-1].node
            origin = s.graph.boxes[new].origin
            assert s.graph.box_canonical(new) == before[origin]
            if origin in s.graph.boxes:
                assert s.graph.box_canonical(origin) == before[origin]
    assert seen


def test_rewrites_take_priority():
    s = initial_state(parse(ID_ID))
    for _ in range(5):
        step_rewrites_first(s)
    # history ends Der:Cut:Bang, so the box opening rule and the Par pass are both possible
    assert [h.kind for h in s.history[-3:]] == ["Der", "Cut", "Bang"]
    probe = s.snapshot()
    assert rewrite_step(probe).rule == "4"
    assert step_rewrites_first(s).rule == "4"


def test_final_state_has_no_transition():
    r = dgoim_run(parse(K_ID))
    assert r.halted
    assert step_rewrites_first(r.state) is None


def test_every_reached_state_is_rooted():
    s = initial_state(parse(CHURCH2))
    while step_rewrites_first(s) is not None:
        assert rooted_check(s)
        assert s.graph.well_boxed_check() is None


def test_history_naming_a_deleted_node_is_not_rooted():
    s = initial_state(parse(ID_ID))
    for _ in range(3):
        step_rewrites_first(s)
    s.history.append(HistoryEntry(AX, 10**9))
    assert not rooted_check(s)


def test_deterministic_costs():
    a, b = dgoim_run(parse(CHURCH2)), dgoim_run(parse(CHURCH2))
    assert a.costs == b.costs and a.stats == b.stats


def test_trace_frames():
    r = dgoim_run(parse(ID_ID), trace=True)
    assert len(r.trace) == r.stats.total
    assert r.trace[0]["rule"] == "pass-Ax" and r.trace[0]["index"] == 0


def test_token_at_an_auxiliary_door_is_an_error():
    from dgoim.graph import WHYNOT
    from dgoim.machine import CorruptedState

    s = initial_state(parse(r"\a. (\z. a) a"))
    q = next(n for n, k in s.graph.kind.items() if k == WHYNOT)
    s.position = ((q, 0), UP)
    with pytest.raises(CorruptedState):
        pass_step(s)
