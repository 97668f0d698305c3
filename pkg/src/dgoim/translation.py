"""Call-by-value style translation of terms and evaluation contexts into graphs.

Only values become boxes.  Shapes produced, reading premises left to right::

    x          Ax; conclusion out 0, the occurrence of x is out 1
    \\x. t      Bang( Par( Con(occurrences of x), t ) ), one WhyNot door per
               other free occurrence of t
    t u        Cut( t, Der( Tensor(u, Ax.1) ) ); conclusion Ax.0
    t[x <- u]  Cut( Con(occurrences of x), u ); conclusion is t's

Each occurrence of a free variable is one open edge.  A context translation
has a ``Hole`` placeholder node whose conclusions stand for the conclusion and
free occurrences of whatever term gets plugged in.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .graph import AX, BANG, CON, CUT, DER, HOLE, PAR, TENSOR, WHYNOT, Edge, Graph, GraphError
from .terms import (
    App,
    AppFrame,
    Context,
    HereditaryFrame,
    Lam,
    Name,
    Sub,
    SubFrame,
    Term,
    Var,
)


@dataclass
class OpenGraph:
    graph: Graph
    conclusion: Edge
    free: dict  # Name -> list of open edges, one per occurrence

    def open_edge_count(self) -> int:
        return 1 + sum(len(v) for v in self.free.values())


@dataclass
class CtxGraph:
    graph: Graph
    hole: int
    conclusion: Edge
    free: dict
    hole_free: dict  # Name -> hole conclusions standing for the plugged term's occurrences


def _merge(a: dict, b: dict) -> dict:
    out = {x: list(es) for x, es in a.items()}
    for x, es in b.items():
        out.setdefault(x, []).extend(es)
    return out


def _apply(g: Graph, fun: Edge, arg: Edge) -> Edge:
    ax = g.add_node(AX)
    tensor = g.add_node(TENSOR, [arg, (ax, 1)])
    der = g.add_node(DER, [(tensor, 0)])
    g.add_node(CUT, [fun, (der, 0)])
    return (ax, 0)


def _bind(g: Graph, free: dict, x: Name, arg: Edge) -> None:
    con = g.add_node(CON, free.pop(x, []))
    g.add_node(CUT, [(con, 0), arg])


def _term(g: Graph, t: Term):
    if isinstance(t, Var):
        a = g.add_node(AX)
        return (a, 0), {t.name: [(a, 1)]}
    if isinstance(t, Lam):
        start = g.supply.next
        body, free = _term(g, t.body)
        con = g.add_node(CON, free.pop(t.var, []))
        par = g.add_node(PAR, [(con, 0), body])
        members = [n for n in range(start, g.supply.next) if n in g.kind]
        bang = g.add_node(BANG, [(par, 0)])
        aux, out = [], {}
        for x, es in free.items():
            for e in es:
                q = g.add_node(WHYNOT, [e])
                aux.append(q)
                out.setdefault(x, []).append((q, 0))
        g.make_box(bang, aux, members)
        return (bang, 0), out
    if isinstance(t, App):
        f, ff = _term(g, t.fun)
        a, af = _term(g, t.arg)
        return _apply(g, f, a), _merge(ff, af)
    if isinstance(t, Sub):
        b, bf = _term(g, t.body)
        a, af = _term(g, t.arg)
        _bind(g, bf, t.var, a)
        return b, _merge(bf, af)
    raise TypeError(f"not a term: {t!r}")


def translate_term(t: Term, graph: Graph | None = None) -> OpenGraph:
    """Translate ``t``; when ``graph`` is given the nodes are added to it."""
    g = Graph() if graph is None else graph
    concl, free = _term(g, t)
    if graph is None:
        g.root = concl
    return OpenGraph(g, concl, free)


def _frames(g: Graph, frames: Context, concl: Edge, free: dict):
    for fr in frames:
        if isinstance(fr, AppFrame):
            a, af = _term(g, fr.arg)
            concl, free = _apply(g, concl, a), _merge(free, af)
        elif isinstance(fr, SubFrame):
            a, af = _term(g, fr.arg)
            _bind(g, free, fr.var, a)
            free = _merge(free, af)
        else:
            c2, f2 = _term(g, Var(fr.var))
            c2, f2 = _frames(g, fr.around, c2, f2)
            _bind(g, f2, fr.var, concl)
            concl, free = c2, _merge(f2, free)
    return concl, free


def translate_ctx(e: Context, m: Counter, graph: Graph | None = None) -> CtxGraph:
    """Translate context ``e`` around a hole whose free occurrences are ``m``."""
    g = Graph() if graph is None else graph
    occ = [x for x in sorted(m) for _ in range(m[x])]
    hole = g.add_node(HOLE, n_out=1 + len(occ))
    hole_free: dict = {}
    for i, x in enumerate(occ):
        hole_free.setdefault(x, []).append((hole, i + 1))
    free = {x: list(es) for x, es in hole_free.items()}
    concl, free = _frames(g, e, (hole, 0), free)
    if graph is None:
        g.root = concl
    return CtxGraph(g, hole, concl, free, hole_free)


def _fill_hole(c: CtxGraph, concl: Edge, free: dict) -> dict:
    """Splice ``concl``/``free`` into the hole of ``c``; returns the edge renaming."""
    g = c.graph
    want = {x: len(es) for x, es in c.hole_free.items() if es}
    have = {x: len(es) for x, es in free.items() if es}
    if want != have:
        raise GraphError(f"hole expects {want}, term provides {have}")
    ren = {(c.hole, 0): concl}
    g.replace_edge(concl, (c.hole, 0))
    for x, hes in c.hole_free.items():
        for he, te in zip(hes, free[x]):
            g.replace_edge(te, he)
            ren[he] = te
    g.remove_node(c.hole)
    return ren


def compose(c: CtxGraph, t: OpenGraph) -> OpenGraph:
    """Plug a term translation into a context translation built in the same graph."""
    if c.graph is not t.graph:
        raise GraphError("context and term must live in the same graph")
    ren = _fill_hole(c, t.conclusion, t.free)
    concl = ren.get(c.conclusion, c.conclusion)
    free = {x: [ren.get(e, e) for e in es] for x, es in c.free.items()}
    return OpenGraph(c.graph, concl, free)


def compose_ctx(outer: CtxGraph, inner: CtxGraph) -> CtxGraph:
    """Plug context translation ``inner`` into the hole of ``outer``."""
    if outer.graph is not inner.graph:
        raise GraphError("contexts must live in the same graph")
    ren = _fill_hole(outer, inner.conclusion, inner.free)
    concl = ren.get(outer.conclusion, outer.conclusion)
    free = {x: [ren.get(e, e) for e in es] for x, es in outer.free.items()}
    return CtxGraph(outer.graph, inner.hole, concl, free, inner.hole_free)


def forget_hole_occurrences(c: CtxGraph, m: Counter) -> CtxGraph:
    """Drop hole conclusions for the occurrences ``m``; they must be open edges.

    Used to compare ``E`` translated around ``M0 + M`` with ``E`` around ``M``
    when no variable of ``M0`` is captured.
    """
    g = c.graph
    keep: dict = {}
    for x, es in c.hole_free.items():
        drop = m.get(x, 0)
        for e in es[:drop]:
            if g.tgt[e] is not None:
                raise GraphError(f"occurrence {x} is captured by the context")
        keep[x] = es[drop:]
    occ = [(x, e) for x in sorted(keep) for e in keep[x]]
    hole = g.add_node(HOLE, n_out=1 + len(occ))
    ren = {(c.hole, 0): (hole, 0)}
    g.replace_edge((hole, 0), (c.hole, 0))
    new_hf: dict = {}
    for i, (x, e) in enumerate(occ):
        ne = (hole, i + 1)
        g.replace_edge(ne, e)
        ren[e] = ne
        new_hf.setdefault(x, []).append(ne)
    dropped = {e for x, es in c.hole_free.items() for e in es[:m.get(x, 0)]}
    if g.root in dropped or g.root == (c.hole, 0):
        g.root = ren.get(g.root)
    g.remove_node(c.hole)
    free = {}
    for x, es in c.free.items():
        kept = [ren.get(e, e) for e in es if e not in dropped]
        if kept:
            free[x] = kept
    return CtxGraph(g, hole, ren.get(c.conclusion, c.conclusion), free, new_hf)
