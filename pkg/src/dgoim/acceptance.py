"""The acceptance criteria as callable checks.

Every check returns an :class:`Outcome`; thresholds are parameters so the
test suite pins them in one place.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass

from .corpus import church_app, gen_corpus
from .cost import FitMember, dgoim_bound, efficiency_fit
from .decomposition import check_instance, instances
from .invariants import InvariantMonitor, InvariantViolation
from .machine import dgoim_run, initial_state, step_rewrites_first
from .parser import parse, parse_term
from .sam import Phase, sam_run
from .simulation import lockstep, related
from .terms import NameSupply, alpha_eq, rename_fresh, size


@dataclass
class Outcome:
    ok: bool
    detail: str


@dataclass(eq=False)
class CorpusEntry:
    family: str
    term: object
    size: int
    sam: object  # SamRun


@functools.lru_cache(maxsize=4)
def corpus(seed: int = 2024, random_count: int = 500, max_size: int = 40,
           fuel: int = 10**5, admission_fuel: int = 10**4) -> tuple:
    """Random terms plus the Church and combinator families, each run on the SAM once.

    Random terms are drawn until ``random_count`` of them halt within
    ``admission_fuel`` SAM steps; the others are kept too, marked as not
    halting, and only take part in the bounded-prefix checks.
    """
    entries, admitted, k = [], 0, 0
    while admitted < random_count:
        batch = gen_corpus("random", seed + k, random_count, max_size)
        k += 1
        for t in batch:
            if admitted == random_count:
                break
            r = sam_run(t, admission_fuel)
            if r.halted:
                admitted += 1
                r = sam_run(t, fuel)
            entries.append(CorpusEntry("random", t, size(t), r))
    fams = [("church-app", gen_corpus("church-app", lo=1, hi=16)),
            ("church-comp", gen_corpus("church-comp", lo=1, hi=8)),
            ("ski", gen_corpus("ski", seed + 1000, 60))]
    for f, ts in fams:
        entries += [CorpusEntry(f, t, size(t), sam_run(t, fuel)) for t in ts]
    return tuple(entries)


def halting(entries) -> list:
    return [e for e in entries if e.sam.halted]


@functools.lru_cache(maxsize=None)
def _sync(entry: CorpusEntry, prefix_fuel: int):
    # shared by the lockstep and bound checks; prefixes on large graphs are slow
    fuel = entry.sam.stats.total + 1 if entry.sam.halted else prefix_fuel
    return lockstep(entry.term, fuel)


def reference_examples() -> Outcome:
    cases = [(r"(\x. x) (\z. z)", r"\z. z"),
             (r"(\x. \y. y) (\z. z)", r"(\y. y)[x <- \z. z]")]
    bad = []
    for src, want in cases:
        r = sam_run(parse(src))
        c = r.config
        if not (r.halted and c.phase is Phase.CTXT and alpha_eq(c.plugged(), parse_term(want))):
            bad.append(f"{src} ended at {c}")
    return Outcome(not bad, "; ".join(bad) or "both executions end at the expected configurations")


def oracle_equivalence(entries, dgoim_fuel: int = 4 * 10**5) -> Outcome:
    bad, n = [], 0
    for e in halting(entries):
        n += 1
        d = dgoim_run(e.term, dgoim_fuel)
        if not d.halted:
            bad.append(f"{e.family} term of size {e.size}: DGoIM did not halt")
        elif not related(e.sam.config, d.state):
            bad.append(f"{e.family} term of size {e.size}: endpoints not related")
    skipped = len(entries) - n
    return Outcome(not bad, f"{n - len(bad)}/{n} halting terms agree ({skipped} without a SAM endpoint)"
                   + (f"; first failure: {bad[0]}" if bad else ""))


def lockstep_conformance(entries, prefix_fuel: int = 200) -> Outcome:
    """Full lockstep on halting terms, a bounded prefix on the others."""
    bad, steps = [], Counter()
    for e in entries:
        rep = _sync(e, prefix_fuel)
        for st in rep.per_sam_step:
            steps[st.rule] += 1
        if not rep.verdict:
            bad.append(f"{e.family} size {e.size}: {rep.divergence}")
        elif e.sam.halted and not (rep.sam_final and rep.final_ok):
            bad.append(f"{e.family} size {e.size}: finality not reached")
    shown = ", ".join(f"{k}={v}" for k, v in sorted(steps.items()))
    return Outcome(not bad, f"{len(entries) - len(bad)}/{len(entries)} terms conform ({shown})"
                   + (f"; first failure: {bad[0]}" if bad else ""))


def quantitative_bounds(entries, prefix_fuel: int = 200) -> Outcome:
    """Both inequalities for both machines; DGoIM runs on non-halting terms are lockstep prefixes."""
    v = Counter()
    example = {}
    for e in entries:
        st, n = e.sam.stats, e.size
        if st.s > st.b:
            v["sam s<=b"] += 1
            example.setdefault("sam s<=b", (e, st))
        if st.o > n * (5 * st.b + 2) + (3 * st.b + 1):
            v["sam o-bound"] += 1
        if e.sam.halted:
            ds = dgoim_run(e.term).stats
        else:
            ds = _sync(e, prefix_fuel).stats
        if ds.s > ds.b:
            v["dgoim s<=b"] += 1
        if ds.o > dgoim_bound(ds.b, n):
            v["dgoim o-bound"] += 1
    parts = [f"{k}: {v[k]} violations" for k in ("sam s<=b", "sam o-bound", "dgoim s<=b", "dgoim o-bound")]
    detail = "; ".join(parts)
    if "sam s<=b" in example:
        e, st = example["sam s<=b"]
        detail += f" (e.g. a {e.family} term of size {e.size} with b={st.b}, s={st.s})"
    return Outcome(sum(v.values()) == 0, detail)


def efficiency(lo: int = 2, hi: int = 64, limit: float = 3.0, grid=range(17)) -> Outcome:
    members = []
    for n in range(lo, hi + 1):
        t = church_app(n)
        r = dgoim_run(t)
        members.append(FitMember(size(t), r.stats, sum(r.costs)))
    rep = efficiency_fit(members, grid)
    spread = "none" if rep.spread is None else f"{rep.spread:.3f}"
    return Outcome(rep.within(limit),
                   f"spread {spread} <= {limit} with C={rep.C}, D={rep.D} "
                   f"({len(rep.flagged)} of {len(members)} members have s > b)")


def structural_invariants(entries, prefix_fuel: int = 2000) -> Outcome:
    bad, steps = [], 0
    for e in entries:
        mon = InvariantMonitor(initial_state(e.term))
        fuel = 4 * 10**5 if e.sam.halted else prefix_fuel
        try:
            dgoim_run(e.term, fuel, observer=mon)
        except InvariantViolation as exc:
            bad.append(f"{e.family} size {e.size}: {exc}")
        steps += mon.steps
    return Outcome(not bad, f"{len(entries) - len(bad)}/{len(entries)} runs clean over {steps} transitions"
                   + (f"; first failure: {bad[0]}" if bad else ""))


def decomposition(seed: int = 11, count: int = 200) -> Outcome:
    fails = Counter()
    insts = instances(seed, count)
    for inst in insts:
        for k, ok in check_instance(inst).items():
            if not ok:
                fails[k] += 1
    nontrivial = sum(1 for i in insts if i["M0_captured"])
    return Outcome(not fails, f"{count} instances per property ({nontrivial} with captured occurrences)"
                   + (f"; failures {dict(fails)}" if fails else ""))


def determinism(entries, count: int = 50, offset: int = 10**6) -> Outcome:
    """Two runs, one on an alpha-renamed input with node names shifted."""
    chosen = [e for e in halting(entries) if e.sam.stats.b > 0][:count]
    bad = []
    for e in chosen:
        t2 = rename_fresh(e.term, NameSupply(offset))
        s1, s2 = initial_state(e.term), initial_state(t2, node_start=offset)
        i = 0
        while True:
            a, b = step_rewrites_first(s1), step_rewrites_first(s2)
            if (a is None) != (b is None) or (a and a.label != b.label):
                bad.append(f"size {e.size}: label mismatch at step {i}")
                break
            if a is None:
                break
            if s1.graph.canonical_form(token=s1.position) != s2.graph.canonical_form(token=s2.position):
                bad.append(f"size {e.size}: graphs differ at step {i}")
                break
            i += 1
    return Outcome(len(chosen) >= count and not bad,
                   f"{len(chosen) - len(bad)}/{len(chosen)} pairs of runs identical up to naming"
                   + (f"; first failure: {bad[0]}" if bad else ""))


CRITERIA = {
    1: ("execution examples", lambda: reference_examples()),
    2: ("oracle equivalence", lambda: oracle_equivalence(corpus())),
    3: ("lockstep step shapes", lambda: lockstep_conformance(corpus())),
    4: ("quantitative bounds", lambda: quantitative_bounds(corpus())),
    5: ("efficiency fit", lambda: efficiency()),
    6: ("structural invariants", lambda: structural_invariants(corpus())),
    7: ("decomposition properties", lambda: decomposition()),
    8: ("determinism up to naming", lambda: determinism(corpus())),
}


def run_all(out=print) -> bool:
    ok = True
    for k, (name, fn) in CRITERIA.items():
        res = fn()
        ok &= res.ok
        out(f"criterion {k} ({name}): {'PASS' if res.ok else 'FAIL'} - {res.detail}")
    return ok
