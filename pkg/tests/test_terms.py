import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from dgoim.corpus import random_ctx, random_open_term, random_term
from dgoim.machine import initial_state
from dgoim.parser import ParseError, parse, parse_term
from dgoim.sam import sam_run
from dgoim.terms import (
    HOLE, App, AppFrame, Ctx, HereditaryFrame, Lam, NameSupply, SubFrame, Var,
    alpha_eq, fv, fv_ctx, is_closed_well_named, is_pure, is_value, occurs, occurs_ctx,
    plug_ctx, plug_term, rename_fresh, show, size,
)


def names(t):
    return {str(x) for x in fv(t)}


def test_size_counts_every_constructor():
    assert size(parse_term(r"\x. x")) == 2
    assert size(parse_term(r"(\x. x) (\z. z)")) == 5
    assert size(parse_term(r"x[x <- \z. z]")) == 4


def test_fv_is_a_multiset():
    t = parse_term(r"x x (\y. y x)")
    (x,) = fv(t)
    assert fv(t)[x] == 3
    assert sorted(fv(parse_term(r"(x y)[x <- y]")).values()) == [2]


def test_occurs_respects_binders():
    t = parse_term(r"(\x. x) x")
    (x,) = fv(t)
    assert occurs(x, t)
    assert not occurs(x, parse_term(r"\x. x"))


def test_values_and_purity():
    assert is_value(parse_term(r"\x. x"))
    assert not is_value(parse_term(r"(\x. x) (\y. y)"))
    assert not is_pure(parse_term(r"x[x <- \z. z]"))


def test_parse_rejects_open_and_non_pure_input():
    with pytest.raises(ValueError):
        parse("x")
    with pytest.raises(ValueError):
        parse(r"x[x <- \z. z]")
    with pytest.raises(ParseError) as exc:
        parse("\\x.")
    assert exc.value.pos >= 0


def test_parse_renames_reused_binders_apart():
    t = parse(r"(\x. x x) (\x. x x)")
    assert is_closed_well_named(t)
    assert alpha_eq(t, parse(r"(\a. a a) (\b. b b)"))
    assert t.fun.var != t.arg.var


def test_machines_reject_terms_that_are_not_well_named():
    x = NameSupply().fresh("x")
    bad = Lam(x, Lam(x, Var(x)))
    assert not is_closed_well_named(bad)
    with pytest.raises(ValueError):
        sam_run(bad)
    with pytest.raises(ValueError):
        initial_state(bad)


def test_show_round_trips():
    src = r"(\x. \y. y x) (\z. z)"
    t = parse(src)
    assert alpha_eq(parse(show(t)), t)


def test_ctx_plugging_is_innermost_first():
    s = NameSupply()
    x, y = s.fresh("x"), s.fresh("y")
    ident = Lam(x, Var(x))
    e = Ctx.of([AppFrame(Var(y)), SubFrame(y, ident)])
    got = plug_term(e, ident)
    assert got.var == y and got.arg == ident
    assert got.body == App(ident, Var(y))


def test_ctx_basics():
    a, b = AppFrame(Var(NameSupply().fresh())), AppFrame(Var(NameSupply(5).fresh()))
    e = Ctx.of([a, b])
    assert len(e) == 2 and e[0] == a and e[1] == b
    assert list(e.push(b)) == [b, a, b]
    assert e == (a, b)
    assert len(HOLE) == 0
    assert list(Ctx.of([a]) + Ctx.of([b])) == [a, b]


def test_hereditary_frame_plugs_around_the_looked_up_variable():
    s = NameSupply()
    x, f = s.fresh("x"), s.fresh("f")
    e = Ctx.of([HereditaryFrame(Ctx.of([AppFrame(Var(f))]), x)])
    t = plug_term(e, Lam(s.fresh("z"), Var(f)))
    assert fv(t)[f] == 2


def test_occurs_ctx_sees_arguments_and_hereditary_parts():
    s = NameSupply()
    x, y = s.fresh("x"), s.fresh("y")
    assert occurs_ctx(x, Ctx.of([AppFrame(Var(x))]))
    assert not occurs_ctx(x, Ctx.of([AppFrame(Var(y))]))
    assert occurs_ctx(x, Ctx.of([HereditaryFrame(Ctx.of([AppFrame(Var(x))]), y)]))


def test_rename_fresh_gives_fresh_binders():
    t = parse(r"\x. \y. x y")
    supply = NameSupply(100)
    u = rename_fresh(t, supply)
    assert alpha_eq(t, u)
    assert u.var.uid >= 100


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_fv_commutes_with_plugging(seed):
    rng = random.Random(seed)
    supply = NameSupply()
    pool = [supply.fresh("a"), supply.fresh("c")]
    e, cap = random_ctx(rng, rng.randint(0, 4), pool, supply)
    inner, cap2 = random_ctx(rng, rng.randint(0, 3), pool + cap, supply)
    t = random_open_term(rng, rng.randint(1, 7), pool + cap + cap2, supply)
    assert fv(plug_term(e, t)) == fv_ctx(e, fv(t))
    m = Counter(rng.sample(pool + cap, 2))
    assert fv_ctx(plug_ctx(e, inner), m) == fv_ctx(e, fv_ctx(inner, m))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_random_terms_are_closed_and_well_named(seed):
    t = random_term(random.Random(seed), 40, NameSupply())
    assert is_closed_well_named(t) and is_pure(t)
    assert size(t) <= 40
    assert alpha_eq(parse(show(t)), t)
