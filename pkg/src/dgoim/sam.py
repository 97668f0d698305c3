"""Call-by-need storeless abstract machine with explicit substitutions.

Six rules: O1, O2 and O3 rearrange the configuration (label ``o``), B is the
delayed beta step (label ``b``), SPos and SOne substitute one occurrence of a
variable (label ``s``).  SOne drops the substitution once its last occurrence
is used, which is the only garbage collection the machine does.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .terms import (
    HOLE,
    AppFrame,
    Context,
    Ctx,
    HereditaryFrame,
    Lam,
    App,
    NameSupply,
    SubFrame,
    Term,
    Var,
    occurs_ctx,
    is_closed_well_named,
    is_pure,
    plug_term,
    rename_fresh,
    show,
    supply_for,
)

SAM_RULES = ("O1", "O2", "O3", "B", "SPos", "SOne")
RULE_LABEL = {"O1": "o", "O2": "o", "O3": "o", "B": "b", "SPos": "s", "SOne": "s"}


class Phase(enum.Enum):
    TERM = "term"
    CTXT = "ctxt"


class MalformedConfiguration(Exception):
    pass


@dataclass(frozen=True)
class Configuration:
    focus: Term
    ctx: Context
    phase: Phase

    def plugged(self) -> Term:
        return plug_term(self.ctx, self.focus)

    def is_final(self) -> bool:
        return self.phase is Phase.CTXT and all(isinstance(f, SubFrame) for f in self.ctx)

    def __str__(self) -> str:
        from .terms import show_ctx

        return f"({show(self.focus)}, {show_ctx(self.ctx)})_{self.phase.value}"


@dataclass
class RunStats:
    b: int = 0
    s: int = 0
    o: int = 0
    per_rule: Counter = field(default_factory=Counter)

    @property
    def total(self) -> int:
        return self.b + self.s + self.o

    def record(self, label: str, rule: str) -> None:
        setattr(self, label, getattr(self, label) + 1)
        self.per_rule[rule] += 1


def initial(t0: Term) -> Configuration:
    return Configuration(t0, HOLE, Phase.TERM)


def sam_step(c: Configuration, supply: NameSupply):
    """One transition: ``(next configuration, label, rule)``, or None if ``c`` is final."""
    e = c.ctx
    if c.phase is Phase.TERM:
        t = c.focus
        if isinstance(t, App):
            return Configuration(t.fun, e.push(AppFrame(t.arg)), Phase.TERM), "o", "O1"
        if isinstance(t, Var):
            e2 = []
            for node in e.nodes():
                fr = node.frame
                if isinstance(fr, SubFrame) and fr.var == t.name:
                    ctx = node.rest.push(HereditaryFrame(Ctx.of(e2), t.name))
                    return Configuration(fr.arg, ctx, Phase.TERM), "o", "O2"
                e2.append(fr)
            raise MalformedConfiguration(f"no substitution binds {t.name}")
        if isinstance(t, Lam):
            return Configuration(t, e, Phase.CTXT), "o", "O3"
        raise MalformedConfiguration("term configuration focused on an explicit substitution")

    v = c.focus
    if not isinstance(v, Lam):
        raise MalformedConfiguration("context configuration must focus on a value")
    a = []
    node = e
    while node.rest is not None and isinstance(node.frame, SubFrame):
        a.append(node.frame)
        node = node.rest
    if node.rest is None:
        return None
    fr, rest = node.frame, node.rest
    if isinstance(fr, AppFrame):
        ctx = Ctx.of(a, rest).push(SubFrame(v.var, fr.arg))
        return Configuration(v.body, ctx, Phase.TERM), "b", "B"
    # fr is E2<x>[x <- A ...]; the hole of E2 held the looked-up occurrence
    e2, x = fr.around, fr.var
    if occurs_ctx(x, e2):
        ctx = e2 + Ctx.of(a, rest).push(SubFrame(x, v))
        return Configuration(rename_fresh(v, supply), ctx, Phase.CTXT), "s", "SPos"
    return Configuration(v, e2 + Ctx.of(a, rest), Phase.CTXT), "s", "SOne"


@dataclass
class SamRun:
    config: Configuration
    halted: bool
    stats: RunStats
    trace: Optional[list] = None


def check_initial(t0: Term) -> None:
    if not is_pure(t0):
        raise ValueError("initial term must be pure")
    if not is_closed_well_named(t0):
        raise ValueError("initial term must be closed and well-named")


def sam_run(t0: Term, fuel: int = 10**5, supply: NameSupply | None = None,
            trace: bool = False) -> SamRun:
    """Run from ``(t0, <.>)_term`` until final or ``fuel`` transitions were taken.

    With ``trace`` the result keeps ``(configuration, label, rule)`` for every
    step, where the configuration is the one the step started from.
    """
    check_initial(t0)
    supply = supply or supply_for(t0)
    c = initial(t0)
    stats = RunStats()
    steps = [] if trace else None
    for _ in range(fuel):
        r = sam_step(c, supply)
        if r is None:
            return SamRun(c, True, stats, steps)
        nxt, label, rule = r
        if trace:
            steps.append((c, label, rule))
        stats.record(label, rule)
        c = nxt
    return SamRun(c, c.is_final(), stats, steps)


def sam_check_bounds(stats: RunStats, input_size: int) -> bool:
    """Substitutions never outnumber beta steps, and overhead is linear in both."""
    b = stats.b
    return stats.s <= b and stats.o <= input_size * (5 * b + 2) + (3 * b + 1)


def format_trace_line(index: int, rule: str, label: str, config: Configuration) -> str:
    return f"{index}\t{rule}\t{label}\t{show(config.plugged())}"
