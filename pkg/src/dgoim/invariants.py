"""Per-transition structural checks for DGoIM runs."""

from __future__ import annotations

from dataclasses import dataclass, field

from .machine import MachineState, rooted_check


class InvariantViolation(AssertionError):
    pass


@dataclass
class InvariantMonitor:
    """Observer that checks a run after every transition.

    Checks well-boxedness, rootedness, linear node growth, stack growth of at
    most one per step, unchanged pass graphs, and that every box copied by
    rule 6 is isomorphic to the initial box it descends from.
    """

    state: MachineState
    check_boxes: bool = True
    steps: int = 0
    n0: int = field(init=False)
    growth: int = field(init=False)
    origins: dict = field(init=False)

    def __post_init__(self):
        g = self.state.graph
        self.n0 = g.node_count()
        self.growth = max((g.box_size(p) for p in g.boxes), default=0)
        self.origins = {p: g.box_canonical(p) for p in g.boxes} if self.check_boxes else {}
        self._last = (len(self.state.history), len(self.state.mult), self.n0, g.edge_count())

    def fail(self, msg: str):
        raise InvariantViolation(f"step {self.steps}: {msg}")

    def __call__(self, *args):
        s, tr = args[-2], args[-1]
        self.steps += 1
        g = s.graph
        v = g.well_boxed_check()
        if v is not None:
            self.fail(f"not well-boxed: {v}")
        if not rooted_check(s):
            self.fail("state is not rooted")
        n = g.node_count()
        if n > self.n0 + self.growth * self.steps:
            self.fail(f"node count {n} exceeds {self.n0} + {self.growth}*{self.steps}")
        h0, m0, n_prev, e_prev = self._last
        if len(s.history) > h0 + 1 or len(s.mult) > m0 + 1:
            self.fail("a stack grew by more than one element")
        if tr.rule.startswith("pass") and (n, g.edge_count()) != (n_prev, e_prev):
            self.fail("a pass transition changed the graph")
        if tr.rule == "6" and self.check_boxes:
            p = s.history[-1].node
            origin = g.boxes[p].origin
            if origin not in self.origins or g.box_canonical(p) != self.origins[origin]:
                self.fail(f"copied box {p} is not a copy of initial box {origin}")
        self._last = (len(s.history), len(s.mult), n, g.edge_count())
