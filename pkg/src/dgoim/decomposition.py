"""Executable forms of the free-variable and translation decomposition properties.

Each check takes a generated instance and returns True when the property
holds on it.
"""

from __future__ import annotations

import random
from collections import Counter

from .corpus import random_ctx, random_open_term
from .graph import CON, CUT, Graph
from .terms import (
    NameSupply,
    SubFrame,
    fv,
    fv_ctx,
    plug_ctx,
    plug_term,
)
from .translation import compose, compose_ctx, forget_hole_occurrences, translate_ctx, translate_term


def fv_plug_term(e, t) -> bool:
    return fv(plug_term(e, t)) == fv_ctx(e, fv(t))


def fv_plug_ctx(e, e2, m: Counter) -> bool:
    return fv_ctx(plug_ctx(e, e2), m) == fv_ctx(e, fv_ctx(e2, m))


def translation_plug_term(e, t) -> bool:
    """``(E<t>)`` translates to ``E`` around ``fv(t)`` composed with ``t``."""
    whole = translate_term(plug_term(e, t)).graph
    g = Graph()
    og = compose(translate_ctx(e, fv(t), graph=g), translate_term(t, graph=g))
    g.root = og.conclusion
    return whole.isomorphic(g)


def translation_plug_ctx(e, e2, m: Counter) -> bool:
    whole = translate_ctx(plug_ctx(e, e2), m).graph
    g = Graph()
    outer = translate_ctx(e, fv_ctx(e2, m), graph=g)
    inner = translate_ctx(e2, m, graph=g)
    cg = compose_ctx(outer, inner)
    g.root = cg.conclusion
    return whole.isomorphic(g)


def subst_ctx_shape(a, m: Counter) -> bool:
    """A substitution context is its hole beside one Con/argument cut per frame."""
    c = translate_ctx(a, m)
    g = c.graph
    if c.conclusion != (c.hole, 0):
        return False
    binding = [n for n, k in g.kind.items()
               if k == CUT and any(g.kind[s] == CON for s, _ in g.ins[n])]
    if len(binding) != len(a):
        return False
    for es in c.hole_free.values():
        for e in es:
            t = g.tgt[e]
            if t is not None and not (g.kind[t] == CON and g.tgt[(t, 0)] in binding):
                return False
    return True


def uncaptured_factor(e, m0: Counter, m: Counter) -> bool:
    """Occurrences no frame captures pass straight through the context."""
    c = translate_ctx(e, m0 + m)
    if any(g_tgt is not None for g_tgt in
           (c.graph.tgt[x] for v, es in c.hole_free.items() for x in es[:m0.get(v, 0)])):
        return False
    return forget_hole_occurrences(c, m0).graph.isomorphic(translate_ctx(e, m).graph)


def _inner_of(e, x):
    frames = []
    for fr in e:
        if isinstance(fr, SubFrame) and fr.var == x:
            return frames
        frames.append(fr)
    raise ValueError(f"{x} is not captured")


def captured_factor(e, m0: Counter, m: Counter) -> bool:
    """Occurrences captured once meet in one Con per variable.

    That Con also collects the ``M1(x)`` occurrences of the context's own
    inner frames, and removing the ``M0`` premises leaves the translation
    around ``M`` alone.
    """
    from .terms import Ctx

    c = translate_ctx(e, m0 + m)
    g = c.graph
    for x, k in m0.items():
        edges = c.hole_free[x][:k]
        targets = {g.tgt[ed] for ed in edges}
        if len(targets) != 1:
            return False
        (con,) = targets
        if con is None or g.kind[con] != CON:
            return False
        m1 = fv_ctx(Ctx.of(_inner_of(e, x)), Counter())[x]
        if len(g.ins[con]) != k + m1:
            return False
        for ed in edges:
            g.detach(ed)
    return forget_hole_occurrences(c, m0).graph.isomorphic(translate_ctx(e, m).graph)


# -- instance generation -------------------------------------------------------

def _multiset(rng, names, hi=3) -> Counter:
    return Counter({x: rng.randint(1, hi) for x in names})


def instances(seed: int, n: int):
    """``n`` instances, each a dict with contexts, a term and multisets."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        supply = NameSupply()
        pool = [supply.fresh("a"), supply.fresh("c"), supply.fresh("d")]
        e, captured = random_ctx(rng, rng.randint(0, 4), pool, supply)
        inner, inner_cap = random_ctx(rng, rng.randint(0, 3), pool + captured, supply)
        t = random_open_term(rng, rng.randint(1, 8), pool + captured + inner_cap, supply)
        a, a_cap = random_ctx(rng, rng.randint(0, 4), pool, supply, subst_only=True)
        free = rng.sample(pool, rng.randint(0, len(pool)))
        m = _multiset(rng, free)
        m_a = _multiset(rng, rng.sample(pool + a_cap, rng.randint(0, 2)))
        m0_free = _multiset(rng, rng.sample(pool, rng.randint(0, len(pool))))
        m0_cap = _multiset(rng, rng.sample(captured, rng.randint(0, len(captured))))
        m_inner = _multiset(rng, rng.sample(pool + captured, rng.randint(0, 2)))
        out.append({"E": e, "E2": inner, "t": t, "M": m, "M_inner": m_inner,
                    "A": a, "M_A": m_a, "M0_free": m0_free, "M0_captured": m0_cap})
    return out


def check_instance(inst) -> dict:
    e, e2, t, m = inst["E"], inst["E2"], inst["t"], inst["M"]
    return {
        "fv-plug-term": fv_plug_term(e, t),
        "fv-plug-ctx": fv_plug_ctx(e, e2, inst["M_inner"]),
        "translation-plug-term": translation_plug_term(e, t),
        "translation-plug-ctx": translation_plug_ctx(e, e2, inst["M_inner"]),
        "subst-ctx-shape": subst_ctx_shape(inst["A"], inst["M_A"]),
        "uncaptured-factor": uncaptured_factor(e, inst["M0_free"], m),
        "captured-factor": captured_factor(e, inst["M0_captured"], m),
    }
