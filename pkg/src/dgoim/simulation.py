"""Relating SAM configurations to DGoIM states, and the lockstep harness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, UP
from .machine import MachineState, initial_state, rooted_check, step_rewrites_first
from .sam import Configuration, Phase, RunStats, check_initial, initial, sam_step
from .terms import AppFrame, Context, HereditaryFrame, Term, fv, supply_for
from .translation import compose, translate_ctx, translate_term

# DGoIM labels expected for one step of each SAM rule
EXPECTED = {"O1": "oooo", "O2": "ooo", "O3": "o", "B": "oobo", "SPos": "so", "SOne": "so"}


def app_depth(e: Context) -> int:
    n = 0
    for fr in e:
        if isinstance(fr, AppFrame):
            n += 1
        elif isinstance(fr, HereditaryFrame):
            n += app_depth(fr.around)
    return n


def expected_graph(c: Configuration):
    """Translation of ``c`` with the token where the relation puts it.

    Term phase: on the focus's conclusion, going up.  Context phase: on the
    root edge inside the value's box, going up (the Bang has been passed).
    """
    g = Graph()
    cg = translate_ctx(c.ctx, fv(c.focus), graph=g)
    tg = translate_term(c.focus, graph=g)
    og = compose(cg, tg)
    g.root = og.conclusion
    edge = tg.conclusion
    if c.phase is Phase.CTXT:
        edge = g.ins[edge[0]][0]
    return g, (edge, UP)


def related(c: Configuration, s: MachineState) -> bool:
    g = s.graph
    if g.open_edges() != [g.root] or not rooted_check(s):
        return False
    if s.mult != ["r"] * app_depth(c.ctx):
        return False
    want, token = expected_graph(c)
    return want.isomorphic(g, token, s.position)


@dataclass
class SyncStep:
    rule: str
    labels: str
    kinds: list  # DGoIM rule ids taken
    related: bool


@dataclass
class SyncReport:
    sam_steps: int = 0
    dgoim_steps: int = 0
    per_sam_step: list = field(default_factory=list)
    divergence: Optional[str] = None
    sam_final: bool = False
    final_ok: Optional[bool] = None
    stats: RunStats = field(default_factory=RunStats)  # DGoIM labels taken
    sam_stats: RunStats = field(default_factory=RunStats)

    @property
    def verdict(self) -> bool:
        return self.divergence is None

    def to_lines(self) -> list:
        out = [f"{i}\t{st.rule}\t{st.labels}\t{','.join(st.kinds)}\t{str(st.related).lower()}"
               for i, st in enumerate(self.per_sam_step)]
        out.append(f"verdict\t{'pass' if self.verdict else 'fail'}\t{self.divergence or ''}")
        return out


def lockstep(t0: Term, fuel: int = 10**5, stop_at_first_divergence: bool = True,
             observer=None) -> SyncReport:
    """Advance the SAM one step at a time and the DGoIM by the expected labels.

    ``observer(state, transition)`` sees every DGoIM transition.
    """
    check_initial(t0)
    supply = supply_for(t0)
    c = initial(t0)
    s = initial_state(t0)
    rep = SyncReport()

    def diverge(msg):
        if rep.divergence is None:
            rep.divergence = msg

    if not related(c, s):
        diverge("initial states are not related")
        if stop_at_first_divergence:
            return rep
    for _ in range(fuel):
        r = sam_step(c, supply)
        if r is None:
            rep.sam_final = True
            rep.final_ok = step_rewrites_first(s.snapshot()) is None
            if not rep.final_ok:
                diverge(f"SAM final after {rep.sam_steps} steps but the DGoIM can still move")
            return rep
        c, label, rule = r
        rep.sam_steps += 1
        rep.sam_stats.record(label, rule)
        want = EXPECTED[rule]
        labels, kinds = "", []
        for _ in want:
            tr = step_rewrites_first(s)
            if tr is None:
                break
            rep.dgoim_steps += 1
            rep.stats.record(tr.label, tr.rule)
            labels += tr.label
            kinds.append(tr.rule)
            if observer is not None:
                observer(s, tr)
        rel = labels == want and related(c, s)
        rep.per_sam_step.append(SyncStep(rule, labels, kinds, rel))
        if labels != want:
            diverge(f"SAM step {rep.sam_steps} ({rule}): expected {want}, got {labels or 'nothing'}")
        elif not rel:
            diverge(f"SAM step {rep.sam_steps} ({rule}): states not related")
        if rep.divergence and stop_at_first_divergence:
            return rep
    return rep
