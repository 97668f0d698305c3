"""The Dynamic GoI machine with the rewrites-first strategy.

A state is a named graph, a token position ``(edge, direction)``, a history
stack and a multiplicative stack.  ``UP`` moves against the edge direction
(towards the edge's source), ``DOWN`` along it.

Pass transitions (label ``o``, graph unchanged)::

    Ax      up an out edge         -> down the other out edge
    Cut     down into a premise    -> up the other premise
    Tensor/Par down a premise      -> down the conclusion, push l/r
    Tensor/Par up the conclusion   -> pop l/r, up that premise
    Bang    up the conclusion      -> up the box root (into the box)
    Der     down the premise       -> down the conclusion
    Con     down a premise         -> down the conclusion

Rewrite transitions fire on the top of the history stack alone:

    1  Cut:Ax            -> .               o
    2/3 Par:Cut:Tensor   -> Cut             b   (left/right premises on the path)
    4  Bang:Cut:Der      -> Cut             o   open the box
    5  Bang:Cut:Ax       -> Bang            o
    6  Bang:Cut:Con(n+1):# -> Bang':Cut':#  s   copy the box for one occurrence
    7  Bang:Cut:Con(1):# -> Bang:Cut:#      s
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .cost import transition_cost
from .graph import AX, BANG, CON, CUT, DER, DOWN, PAR, TENSOR, UP, WHYNOT, Graph, NodeSupply
from .sam import RunStats, check_initial
from .terms import Term
from .translation import translate_term


class CorruptedState(Exception):
    """A history pattern matched but the graph around the token disagrees."""


class HistoryEntry(NamedTuple):
    kind: str
    node: int
    # Tensor/Par: premise index used; Con: the premise edge the token came
    # down.  Not part of the history's abstract content.
    hint: object = None


class Transition(NamedTuple):
    label: str
    rule: str  # "pass-<Kind>" or "1".."7"
    cost: int
    nodes_copied: int = 0
    doors: int = 0


@dataclass
class MachineState:
    graph: Graph
    position: tuple  # (edge, direction)
    history: list = field(default_factory=list)
    mult: list = field(default_factory=list)

    def snapshot(self) -> "MachineState":
        import copy

        return copy.deepcopy(self)

    def describe(self) -> str:
        h = " : ".join(f"{e.kind}{e.node}" for e in reversed(self.history)) or "[]"
        return f"token {self.position}, history {h}, mult {list(reversed(self.mult))}"


def initial_state(t0: Term, node_start: int = 0) -> MachineState:
    """Token on the root of ``t0``'s translation, going up; node names start at ``node_start``."""
    check_initial(t0)
    g = Graph(NodeSupply(node_start))
    og = translate_term(t0, graph=g)
    g.root = og.conclusion
    return MachineState(g, (og.conclusion, UP))


def pass_step(s: MachineState) -> Optional[Transition]:
    g = s.graph
    e, d = s.position
    if d == UP:
        n, p = e
        k = g.kind[n]
        if k == AX:
            s.position = ((n, 1 - p), DOWN)
            s.history.append(HistoryEntry(AX, n))
        elif k in (TENSOR, PAR):
            if not s.mult:
                return None
            i = 0 if s.mult.pop() == "l" else 1
            s.position = (g.ins[n][i], UP)
            s.history.append(HistoryEntry(k, n, i))
        elif k == BANG:
            s.position = (g.ins[n][0], UP)
            s.history.append(HistoryEntry(BANG, n))
        elif k == WHYNOT:
            raise CorruptedState(f"token reached auxiliary door {n}")
        else:
            return None
        return Transition("o", f"pass-{k}", 1)

    n = g.tgt[e]
    if n is None:
        return None
    k = g.kind[n]
    if k == CUT:
        i = g.ins[n].index(e)
        s.position = (g.ins[n][1 - i], UP)
        s.history.append(HistoryEntry(CUT, n))
    elif k in (TENSOR, PAR):
        i = g.ins[n].index(e)
        s.mult.append("l" if i == 0 else "r")
        s.position = ((n, 0), DOWN)
        s.history.append(HistoryEntry(k, n, i))
    elif k in (DER, CON):
        s.position = ((n, 0), DOWN)
        s.history.append(HistoryEntry(k, n, e if k == CON else None))
    elif k == WHYNOT:
        raise CorruptedState(f"token reached auxiliary door {n}")
    else:
        return None
    return Transition("o", f"pass-{k}", 1)


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise CorruptedState(msg)


def _place(g: Graph, n: int, par) -> None:
    g.parent[n] = par
    while par is not None:
        g.boxes[par].members.add(n)
        par = g.parent[par]


def _rule1(s: MachineState) -> Transition:
    g = s.graph
    cut, ax = s.history[-1].node, s.history[-2].node
    e_tok = s.position[0]
    _expect(g.tgt.get(e_tok) == cut, "rule 1: token is not on a premise of the cut")
    (j,) = [p for (q, p) in g.ins[cut] if q == ax]
    g.replace_edge(e_tok, (ax, 1 - j))
    g.remove_node(cut)
    g.remove_node(ax)
    del s.history[-2:]
    return Transition("o", "1", 1)


def _rule_beta(s: MachineState) -> Transition:
    g = s.graph
    par, cut, ten = (s.history[-1], s.history[-2], s.history[-3])
    j = par.hint
    _expect(ten.hint == j, "rule 2/3: tensor and par premises on the path differ")
    _expect(g.tgt[(par.node, 0)] == cut.node and g.tgt[(ten.node, 0)] == cut.node,
            "rule 2/3: par and tensor are not cut together")
    _expect(s.position[0] == g.ins[par.node][j], "rule 2/3: token is not above the par")
    pa, te = list(g.ins[par.node]), list(g.ins[ten.node])
    beta = cut.node
    level = g.parent[beta]
    for n in (par.node, ten.node, beta):
        g.remove_node(n)
    for e in pa + te:
        g.tgt[e] = None
    _place(g, g.add_node(CUT, [pa[j], te[j]], name=beta), level)
    _place(g, g.add_node(CUT, [pa[1 - j], te[1 - j]]), level)
    del s.history[-3:]
    s.history.append(HistoryEntry(CUT, beta))
    return Transition("b", "2" if j == 0 else "3", 1)


def _rule4(s: MachineState) -> Transition:
    g = s.graph
    bang, cut, der = (x.node for x in s.history[-1:-4:-1])
    _expect(g.tgt[(bang, 0)] == cut and g.tgt[(der, 0)] == cut, "rule 4: bang and der not cut")
    _expect(g.parent[bang] is None, "rule 4: box is nested")
    doors = g.open_box(bang)
    g.splice_out(der)
    del s.history[-3:]
    s.history.append(HistoryEntry(CUT, cut))
    return Transition("o", "4", transition_cost("4", doors=doors), doors=doors)


def _rule5(s: MachineState) -> Transition:
    g = s.graph
    bang, cut, ax = (x.node for x in s.history[-1:-4:-1])
    _expect(g.tgt[(bang, 0)] == cut, "rule 5: bang not on the cut")
    (j,) = [p for (q, p) in g.ins[cut] if q == ax]
    g.replace_edge((bang, 0), (ax, 1 - j))
    g.remove_node(cut)
    g.remove_node(ax)
    top = s.history.pop()
    del s.history[-2:]
    s.history.append(top)
    return Transition("o", "5", 1)


def _rule_contraction(s: MachineState) -> Transition:
    g = s.graph
    bang, cut, con, sharp = s.history[-1], s.history[-2], s.history[-3], s.history[-4]
    e_p = con.hint
    _expect(g.tgt[(bang.node, 0)] == cut.node and g.tgt[(con.node, 0)] == cut.node,
            "rule 6/7: bang and contraction are not cut together")
    _expect(g.tgt.get(e_p) == con.node and e_p[0] == sharp.node,
            "rule 6/7: traversed premise is gone")
    arity = len(g.ins[con.node])
    if arity == 1:
        g.splice_out(con.node)
        del s.history[-3]
        return Transition("s", "7", 1)

    box = g.boxes[bang.node]
    _expect(g.parent[bang.node] is None, "rule 6: box is nested")
    members, n_aux = len(box.members), len(box.aux)
    new_bang, mp = g.copy_box(bang.node)
    g.detach(e_p)
    eta = g.add_node(CUT, [e_p, (new_bang, 0)])
    _place(g, eta, g.parent[con.node])
    for eps in box.aux:
        phi = g.tgt[(eps, 0)]
        _expect(phi is not None and g.kind[phi] == CON, "rule 6: auxiliary door not contracted")
        g.attach((mp[eps], 0), phi)
    (src, port), d = s.position
    s.position = ((mp[src], port), d)
    del s.history[-3:]
    s.history.append(HistoryEntry(CUT, eta))
    s.history.append(HistoryEntry(BANG, new_bang))
    doors = 1 + n_aux
    cost = transition_cost("6", doors=doors, nodes_copied=members)
    return Transition("s", "6", cost, nodes_copied=members, doors=doors)


def rewrite_step(s: MachineState) -> Optional[Transition]:
    h = s.history
    if len(h) < 2:
        return None
    g = s.graph
    for x in h[-4:]:
        if x.node not in g.kind:
            raise CorruptedState(f"history names deleted node {x.node}")
    top, second = h[-1].kind, h[-2].kind
    if top == CUT:
        return _rule1(s) if second == AX else None
    if len(h) < 3 or second != CUT:
        return None
    third = h[-3].kind
    if top == PAR and third == TENSOR:
        return _rule_beta(s)
    if top != BANG:
        return None
    if third == DER:
        return _rule4(s)
    if third == AX:
        return _rule5(s)
    if third == CON:
        _expect(len(h) >= 4, "rule 6/7: contraction entry without a predecessor")
        return _rule_contraction(s)
    return None


def step_rewrites_first(s: MachineState) -> Optional[Transition]:
    r = rewrite_step(s)
    if r is not None:
        return r
    return pass_step(s)


def rooted_check(s: MachineState) -> bool:
    """Replay the history as a path from the root and check it ends at the token."""
    g = s.graph
    if g.root is None or g.root not in g.tgt or g.tgt[g.root] is not None:
        return False
    cur = g.root
    for entry in s.history:
        n, k = entry.node, entry.kind
        if g.kind.get(n) != k:
            return False
        into = g.tgt.get(cur) == n
        if k == AX:
            if cur[0] != n:
                return False
            cur = (n, 1 - cur[1])
        elif k == CUT:
            if not into:
                return False
            ins = g.ins[n]
            cur = ins[1 - ins.index(cur)]
        elif k in (TENSOR, PAR):
            if into:
                cur = (n, 0)
            elif cur == (n, 0):
                cur = g.ins[n][entry.hint]
            else:
                return False
        elif k == BANG:
            if cur != (n, 0):
                return False
            cur = g.ins[n][0]
        elif k in (DER, CON):
            if not into:
                return False
            cur = (n, 0)
        else:
            return False
    return cur == s.position[0]


@dataclass
class DgoimRun:
    state: MachineState
    halted: bool
    stats: RunStats
    costs: list
    trace: Optional[list] = None
    max_nodes: int = 0


def dgoim_run(t0: Term, fuel: int = 4 * 10**5, trace: bool = False,
              observer=None, node_start: int = 0) -> DgoimRun:
    """Run the rewrites-first machine from the translation of ``t0``.

    ``observer(index, state, transition)`` is called after every transition.
    Trace frames are dicts with index, label, rule, node_count,
    history_depth and mult_depth.
    """
    s = initial_state(t0, node_start)
    stats = RunStats()
    costs = []
    frames = [] if trace else None
    max_nodes = s.graph.node_count()
    for i in range(fuel):
        tr = step_rewrites_first(s)
        if tr is None:
            return DgoimRun(s, True, stats, costs, frames, max_nodes)
        stats.record(tr.label, tr.rule)
        costs.append(tr.cost)
        n = s.graph.node_count()
        max_nodes = max(max_nodes, n)
        if trace:
            frames.append({"index": i, "label": tr.label, "rule": tr.rule, "node_count": n,
                           "history_depth": len(s.history), "mult_depth": len(s.mult)})
        if observer is not None:
            observer(i, s, tr)
    halted = rewrite_step(s.snapshot()) is None and pass_step(s.snapshot()) is None
    return DgoimRun(s, halted, stats, costs, frames, max_nodes)


