import json

import pytest
from hypothesis import given, strategies as st

from dgoim.corpus import church_app
from dgoim.cost import (
    FitMember, dgoim_bound, dgoim_check_bounds, efficiency_fit, format_fit, stats_record,
    transition_cost,
)
from dgoim.machine import dgoim_run
from dgoim.sam import RunStats
from dgoim.terms import size


def test_transition_costs():
    assert transition_cost("pass-Cut") == 1
    assert transition_cost("4", doors=4) == 5  # three auxiliary doors plus the principal one
    assert transition_cost("7") == 1
    assert transition_cost("6", doors=2, nodes_copied=7) == 10
    with pytest.raises(ValueError):
        transition_cost("9")


def test_bound_examples():
    assert dgoim_check_bounds(RunStats(b=1, s=1, o=13), 5)
    assert dgoim_bound(1, 5) == 160
    assert not dgoim_check_bounds(RunStats(b=0, s=1), 5)
    assert dgoim_check_bounds(RunStats(), 0)


def test_identical_runs_fit_perfectly():
    m = FitMember(10, RunStats(b=3, s=2, o=40), 100)
    rep = efficiency_fit([m, m, m])
    assert rep.spread == pytest.approx(1.0)
    assert rep.degenerate


def test_fit_flags_members_breaking_s_le_b():
    ms = [FitMember(10, RunStats(b=3, s=2), 100), FitMember(10, RunStats(b=1, s=2), 50),
          FitMember(12, RunStats(b=4, s=1), 130)]
    rep = efficiency_fit(ms)
    assert rep.flagged == [1]
    assert rep.spread is not None


def test_fit_needs_three_members():
    with pytest.raises(ValueError):
        efficiency_fit([FitMember(1, RunStats(b=1), 1)] * 2)


@given(st.lists(st.tuples(st.integers(1, 50), st.integers(0, 20), st.integers(1, 10**4)),
                min_size=3, max_size=8))
def test_spread_is_at_least_one(rows):
    rep = efficiency_fit([FitMember(n, RunStats(b=b), c) for n, b, c in rows])
    assert rep.spread >= 1.0 - 1e-12
    assert 0 <= rep.C <= 16 and 0 <= rep.D <= 16


def test_church_family_is_linear():
    ms = []
    for n in range(2, 13):
        r = dgoim_run(church_app(n))
        ms.append(FitMember(size(church_app(n)), r.stats, sum(r.costs)))
    assert efficiency_fit(ms).within(3.0)


def test_report_formats():
    rep = efficiency_fit([FitMember(3, RunStats(b=1), 9)] * 3)
    text = format_fit(rep, "demo")
    assert "family: demo" in text and "spread: 1.0" in text
    rec = json.loads(stats_record(5, "sam", RunStats(b=1, s=1, o=4), None, True, None))
    assert rec["total"] == 6 and rec["machine"] == "sam"
