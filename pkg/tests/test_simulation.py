import pytest

from dgoim.machine import initial_state, step_rewrites_first
from dgoim.parser import parse, parse_term
from dgoim.sam import Phase, initial, sam_step
from dgoim.simulation import EXPECTED, app_depth, lockstep, related
from dgoim.terms import alpha_eq, supply_for

from conftest import DUP, ID_ID, K_ID


def test_initial_states_are_related():
    t = parse(ID_ID)
    assert related(initial(t), initial_state(t))


def test_related_after_first_step():
    t = parse(ID_ID)
    c, _, _ = sam_step(initial(t), supply_for(t))
    s = initial_state(t)
    for _ in range(4):
        step_rewrites_first(s)
    assert related(c, s)
    assert not related(initial(t), s)


def test_related_rejects_different_graphs():
    t, u = parse(ID_ID), parse(r"\z. z")
    assert not related(initial(t), initial_state(u))


def test_identity_lockstep_sequences():
    rep = lockstep(parse(ID_ID))
    assert rep.verdict and rep.sam_final and rep.final_ok
    assert [st.labels for st in rep.per_sam_step] == ["oooo", "o", "oobo", "ooo", "o", "so"]


def test_garbage_lockstep_ends_with_substitution_context():
    t = parse(K_ID)
    rep = lockstep(t)
    assert rep.verdict and rep.final_ok
    from dgoim.sam import sam_run

    c = sam_run(t).config
    assert c.phase is Phase.CTXT
    assert alpha_eq(c.plugged(), parse_term(r"(\y. y)[x <- \z. z]"))


@pytest.mark.parametrize("src", [DUP, r"(\f. \x. f (f x)) (\y. y) (\z. z)",
                                 r"(\x. \y. x y y) (\a. \b. b) (\c. c)"])
def test_every_sam_step_matches(src):
    rep = lockstep(parse(src))
    assert rep.verdict, rep.divergence
    assert all(st.labels == EXPECTED[st.rule] for st in rep.per_sam_step)
    assert rep.stats.b == rep.sam_stats.b and rep.stats.s == rep.sam_stats.s


def test_lockstep_prefix_on_divergent_term():
    rep = lockstep(parse(r"(\x. x x) (\y. y y)"), fuel=60)
    assert rep.verdict and not rep.sam_final and rep.sam_steps == 60


def test_report_lines():
    lines = lockstep(parse(ID_ID)).to_lines()
    assert lines[0].split("\t")[:3] == ["0", "O1", "oooo"]
    assert lines[-1].startswith("verdict\tpass")


def test_app_depth_counts_argument_frames():
    t = parse(ID_ID)
    c, _, _ = sam_step(initial(t), supply_for(t))
    assert app_depth(c.ctx) == 1
