"""Deterministic families of closed, well-named initial terms."""

from __future__ import annotations

import random

from .terms import App, Lam, NameSupply, Term, Var


def _lam(supply: NameSupply, base: str, body_fn) -> Term:
    x = supply.fresh(base)
    return Lam(x, body_fn(Var(x)))


def identity(supply: NameSupply) -> Term:
    return _lam(supply, "i", lambda x: x)


def church(n: int, supply: NameSupply) -> Term:
    f, x = supply.fresh("f"), supply.fresh("x")
    body: Term = Var(x)
    for _ in range(n):
        body = App(Var(f), body)
    return Lam(f, Lam(x, body))


def church_app(n: int, supply: NameSupply | None = None) -> Term:
    """``c_n I I``."""
    supply = supply or NameSupply()
    return App(App(church(n, supply), identity(supply)), identity(supply))


def compose(supply: NameSupply, g: Term, h: Term) -> Term:
    a, b, x = supply.fresh("g"), supply.fresh("h"), supply.fresh("x")
    comp = Lam(a, Lam(b, Lam(x, App(Var(a), App(Var(b), Var(x))))))
    return App(App(comp, g), h)


def church_comp(m: int, n: int, supply: NameSupply | None = None) -> Term:
    """``(c_m . c_n) I I``."""
    supply = supply or NameSupply()
    t = compose(supply, church(m, supply), church(n, supply))
    return App(App(t, identity(supply)), identity(supply))


def combinator(name: str, supply: NameSupply) -> Term:
    if name == "I":
        return identity(supply)
    if name == "K":
        x, y = supply.fresh("x"), supply.fresh("y")
        return Lam(x, Lam(y, Var(x)))
    if name == "S":
        x, y, z = supply.fresh("x"), supply.fresh("y"), supply.fresh("z")
        return Lam(x, Lam(y, Lam(z, App(App(Var(x), Var(z)), App(Var(y), Var(z))))))
    raise ValueError(name)


def ski_term(rng: random.Random, leaves: int, supply: NameSupply) -> Term:
    if leaves <= 1:
        return combinator(rng.choice("SKI"), supply)
    k = rng.randint(1, leaves - 1)
    return App(ski_term(rng, k, supply), ski_term(rng, leaves - k, supply))


def random_term(rng: random.Random, max_size: int, supply: NameSupply) -> Term:
    """A closed, well-named pure term of size at most ``max_size`` (>= 2)."""
    target = rng.randint(2, max_size)

    def gen(budget: int, scope: list) -> Term:
        # budget >= 1; a closed term needs a binder, so scope is never empty
        # when budget is 1
        if budget == 1:
            return Var(rng.choice(scope))
        if not scope and budget >= 5 and rng.random() < 0.7:
            # closed application: both sides need a binder of their own
            left = rng.randint(2, budget - 3)
            return App(gen(left, scope), gen(budget - 1 - left, scope))
        if budget == 2 or not scope:
            x = supply.fresh("v")
            return Lam(x, gen(budget - 1, scope + [x]))
        choice = rng.random()
        if choice < 0.3:
            x = supply.fresh("v")
            return Lam(x, gen(budget - 1, scope + [x]))
        if choice < 0.4:
            return Var(rng.choice(scope))
        left = rng.randint(1, budget - 2)
        return App(gen(left, scope), gen(budget - 1 - left, scope))

    return gen(target, [])


def gen_corpus(family: str, seed: int = 0, count: int = 100, max_size: int = 40,
               lo: int = 2, hi: int = 16) -> list:
    """Terms of one family, deterministic in ``seed``.

    Families: ``church-app`` (n in lo..hi), ``church-comp`` (pairs in lo..hi),
    ``ski`` and ``random`` (``count`` terms each).
    """
    rng = random.Random(seed)
    if family == "church-app":
        return [church_app(n) for n in range(lo, hi + 1)]
    if family == "church-comp":
        return [church_comp(m, n) for m in range(lo, hi + 1) for n in range(lo, hi + 1)
                if m + n <= hi]
    if family == "ski":
        out = []
        for _ in range(count):
            out.append(ski_term(rng, rng.randint(1, 6), NameSupply()))
        return out
    if family == "random":
        return [random_term(rng, max_size, NameSupply()) for _ in range(count)]
    raise ValueError(f"unknown family {family!r}")


FAMILIES = ("church-app", "church-comp", "ski", "random")


# -- open terms and contexts for the decomposition properties -----------------

def random_open_term(rng: random.Random, size: int, scope: list, supply: NameSupply) -> Term:
    """A pure term of exactly ``size`` over the free names ``scope`` (non-empty)."""
    if size == 1:
        return Var(rng.choice(scope))
    if size == 2 or rng.random() < 0.35:
        x = supply.fresh("b")
        return Lam(x, random_open_term(rng, size - 1, scope + [x], supply))
    left = rng.randint(1, size - 2)
    return App(random_open_term(rng, left, scope, supply),
               random_open_term(rng, size - 1 - left, scope, supply))


def random_ctx(rng: random.Random, frames: int, scope: list, supply: NameSupply,
               subst_only: bool = False, hereditary: bool = True):
    """An evaluation context of ``frames`` spine frames, innermost first.

    Returns the context and the names its substitution frames capture.
    Arguments only mention names of ``scope`` and of substitutions further
    out, so the result is well-named.
    """
    from .terms import AppFrame, Ctx, HereditaryFrame, SubFrame

    # build outermost first so each frame can mention names bound further out
    out, captured, visible = [], [], list(scope)
    for _ in range(frames):
        kind = "sub" if subst_only else rng.choice(("app", "sub", "sub", "her") if hereditary
                                                   else ("app", "sub"))
        if kind == "app":
            out.append(AppFrame(random_open_term(rng, rng.randint(1, 5), visible, supply)))
        elif kind == "sub":
            x = supply.fresh("s")
            out.append(SubFrame(x, random_open_term(rng, rng.randint(1, 5), visible, supply)))
            visible.append(x)
            captured.append(x)
        else:
            x = supply.fresh("h")
            around, _ = random_ctx(rng, rng.randint(0, 2), visible + [x], supply,
                                   hereditary=False)
            out.append(HereditaryFrame(around, x))
    return Ctx.of(reversed(out)), captured
