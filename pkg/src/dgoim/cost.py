"""Abstract time cost of machine runs and the linear-bound checks.

One unit per constant-time transition.  Opening a box costs one unit per
deleted door on top of that, copying a box one unit per copied node and per
copied door.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .sam import RunStats

CONSTANT_RULES = ("1", "2", "3", "5", "7")


def transition_cost(kind: str, doors: int = 0, nodes_copied: int = 0) -> int:
    """``kind`` is ``"pass-<Kind>"`` or a rewrite rule id ``"1"``..``"7"``."""
    if kind.startswith("pass") or kind in CONSTANT_RULES:
        return 1
    if kind == "4":
        return 1 + doors
    if kind == "6":
        return 1 + nodes_copied + doors
    raise ValueError(f"unknown transition kind {kind!r}")


@dataclass
class CostReport:
    stats: RunStats
    costs: list
    input_size: int
    total: int = field(init=False)

    def __post_init__(self):
        self.total = sum(self.costs)


def dgoim_bound(b: int, input_size: int) -> int:
    return 4 * input_size * (5 * b + 2) + (16 * b + 4)


def dgoim_check_bounds(stats: RunStats, input_size: int) -> bool:
    return stats.s <= stats.b and stats.o <= dgoim_bound(stats.b, input_size)


@dataclass
class FitMember:
    input_size: int
    stats: RunStats
    total_cost: int


@dataclass
class FitReport:
    C: int | None
    D: int | None
    ratios: list
    spread: float | None
    degenerate: bool = False
    flagged: list = field(default_factory=list)  # indices of members with s > b

    def within(self, limit: float) -> bool:
        return self.spread is not None and self.spread <= limit


def _ratios(members, C, D):
    return [m.total_cost / ((m.input_size + C) * (m.stats.b + D)) for m in members]


def efficiency_fit(members: list, grid=range(17)) -> FitReport:
    """Fit C, D on a grid so that ``T / ((|t0|+C)(b+D))`` varies least.

    The objective is the max/min spread of the ratios over the family; a
    bounded spread is what linearity in both parameters predicts.
    """
    if len(members) < 3:
        raise ValueError("efficiency_fit needs at least three family members")
    # members breaking s <= b are reported, not dropped
    flagged = [i for i, m in enumerate(members) if m.stats.s > m.stats.b]
    keys = {(m.input_size, m.stats.b, m.total_cost) for m in members}
    best = None
    for C in grid:
        for D in grid:
            if C == 0 and D == 0 and any(m.stats.b == 0 or m.input_size == 0 for m in members):
                continue
            if D == 0 and any(m.stats.b == 0 for m in members):
                continue
            r = _ratios(members, C, D)
            if min(r) <= 0:
                continue
            spread = max(r) / min(r)
            if best is None or spread < best[0]:
                best = (spread, C, D, r)
    if best is None:
        return FitReport(None, None, [], None, len(keys) == 1, flagged)
    spread, C, D, r = best
    return FitReport(C, D, r, spread, len(keys) == 1, flagged)


def format_fit(rep: FitReport, family: str = "") -> str:
    lines = []
    if family:
        lines.append(f"family: {family}")
    lines += [f"C: {rep.C}", f"D: {rep.D}",
              f"spread: {rep.spread if rep.spread is None else round(rep.spread, 4)}",
              f"degenerate: {str(rep.degenerate).lower()}",
              f"flagged: {','.join(map(str, rep.flagged)) or '-'}"]
    if rep.ratios:
        lines.append(f"ratio_min: {min(rep.ratios):.6f}")
        lines.append(f"ratio_max: {max(rep.ratios):.6f}")
    return "\n".join(lines)


def stats_record(term_size: int, machine: str, stats: RunStats | None, cost_total,
                 halted: bool, related) -> str:
    rec = {
        "term_size": term_size,
        "machine": machine,
        "b": stats.b if stats else None,
        "s": stats.s if stats else None,
        "o": stats.o if stats else None,
        "total": stats.total if stats else None,
        "cost_total": cost_total,
        "halted": halted,
        "related": related,
    }
    return json.dumps(rec, sort_keys=False)
