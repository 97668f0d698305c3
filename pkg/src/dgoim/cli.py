"""Command line: ``dgoim eval|trace|bench|check``.

Exit codes: 0 success, 1 failed acceptance check, 2 parse or validation
error, 3 fuel exhausted, 4 divergence between the machines, 5 bound
violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cost
from .corpus import FAMILIES, gen_corpus
from .machine import dgoim_run
from .parser import ParseError, parse
from .sam import format_trace_line, sam_check_bounds, sam_run
from .simulation import lockstep, related
from .terms import size

OK, CHECK_FAILED, PARSE, FUEL, DIVERGENCE, BOUND = 0, 1, 2, 3, 4, 5


def _source(args) -> str:
    if args.file:
        return Path(args.file).read_text()
    if args.term is None:
        raise ParseError("no term given", 0)
    return args.term


def _range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    return int(lo), int(hi or lo)


def _emit_sam(t, fuel, out):
    r = sam_run(t, fuel)
    out(cost.stats_record(size(t), "sam", r.stats, None, r.halted, None))
    return r


def _emit_dgoim(t, fuel, out, sam_config=None):
    r = dgoim_run(t, fuel)
    rel = related(sam_config, r.state) if sam_config is not None and r.halted else None
    out(cost.stats_record(size(t), "dgoim", r.stats, sum(r.costs), r.halted, rel))
    return r, rel


def cmd_eval(args, out) -> int:
    t = parse(_source(args))
    n = size(t)
    m = args.machine
    if m == "sam":
        r = _emit_sam(t, args.fuel, out)
        if not r.halted:
            return FUEL
        return OK if sam_check_bounds(r.stats, n) else BOUND
    if m == "dgoim":
        r, _ = _emit_dgoim(t, args.fuel, out)
        if not r.halted:
            return FUEL
        return OK if cost.dgoim_check_bounds(r.stats, n) else BOUND
    if m == "both":
        sr = _emit_sam(t, args.fuel, out)
        if not sr.halted:
            return FUEL
        dr, rel = _emit_dgoim(t, 4 * args.fuel, out, sr.config)
        if not dr.halted:
            return FUEL
        if not rel:
            return DIVERGENCE
        ok = sam_check_bounds(sr.stats, n) and cost.dgoim_check_bounds(dr.stats, n)
        return OK if ok else BOUND
    rep = lockstep(t, args.fuel, args.stop_at_first_divergence)
    for line in rep.to_lines():
        out(line)
    out(cost.stats_record(n, "lockstep", rep.stats, None, rep.sam_final, rep.verdict))
    if not rep.verdict:
        return DIVERGENCE
    return OK if rep.sam_final else FUEL


def cmd_trace(args, out) -> int:
    t = parse(_source(args))
    target = Path(args.trace_out) if args.trace_out else None
    if target:
        target.mkdir(parents=True, exist_ok=True)
    lines = []
    if args.machine == "sam":
        r = sam_run(t, args.fuel, trace=True)
        lines = [format_trace_line(i, rule, label, c) for i, (c, label, rule) in enumerate(r.trace)]
        halted = r.halted
    elif args.machine == "lockstep":
        rep = lockstep(t, args.fuel, args.stop_at_first_divergence)
        lines = rep.to_lines()
        halted = rep.sam_final
        if not rep.verdict:
            _write(lines, target, "lockstep.tsv", out)
            return DIVERGENCE
    else:
        dots = []

        def dump(i, s, tr):
            if args.dot_every and i % args.dot_every == 0:
                dots.append((i, s.graph.to_dot(s.position, name=f"step{i}")))

        r = dgoim_run(t, args.fuel, trace=True, observer=dump)
        lines = [json.dumps(f) for f in r.trace]
        halted = r.halted
        if target:
            for i, src in dots:
                (target / f"step_{i:06d}.dot").write_text(src + "\n")
    name = {"sam": "sam.tsv", "lockstep": "lockstep.tsv"}.get(args.machine, "dgoim.jsonl")
    _write(lines, target, name, out)
    return OK if halted else FUEL


def _write(lines, target, name, out):
    if target:
        (target / name).write_text("\n".join(lines) + "\n")
    else:
        for line in lines:
            out(line)


def cmd_bench(args, out) -> int:
    lo, hi = _range(args.n)
    terms = gen_corpus(args.family, args.seed, count=args.count, lo=lo, hi=hi)
    members, records, exhausted = [], [], 0
    for t in terms:
        r = dgoim_run(t, args.fuel)
        if not r.halted:
            exhausted += 1
            continue
        members.append(cost.FitMember(size(t), r.stats, sum(r.costs)))
        records.append(cost.stats_record(size(t), "dgoim", r.stats, sum(r.costs), True, None))
    if len(members) < 3:
        out(f"family: {args.family}\nerror: fewer than three halting members")
        return FUEL
    rep = cost.efficiency_fit(members)
    out(cost.format_fit(rep, args.family))
    out(f"members: {len(members)}\nexhausted: {exhausted}")
    if args.trace_out:
        Path(args.trace_out).mkdir(parents=True, exist_ok=True)
        (Path(args.trace_out) / "bench.jsonl").write_text("\n".join(records) + "\n")
    return OK


def cmd_check(args, out) -> int:
    from .acceptance import run_all

    return OK if run_all(out) else CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dgoim", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def term_args(sp, machines, default):
        sp.add_argument("term", nargs="?", help="term source, e.g. '(\\x. x) (\\z. z)'")
        sp.add_argument("--file", help="read the term from a file")
        sp.add_argument("--machine", choices=machines, default=default)
        sp.add_argument("--fuel", type=int, default=10**5)
        sp.add_argument("--stop-at-first-divergence", action="store_true", default=True)
        sp.add_argument("--keep-going", dest="stop_at_first_divergence", action="store_false",
                        help="continue lockstep after a divergence")

    ev = sub.add_parser("eval", help="run a machine and print a JSON stats record")
    term_args(ev, ["sam", "dgoim", "both", "lockstep"], "both")
    ev.set_defaults(fn=cmd_eval)

    tr = sub.add_parser("trace", help="export a step-by-step trace")
    term_args(tr, ["sam", "dgoim", "lockstep"], "dgoim")
    tr.add_argument("--trace-out", help="directory for trace files (default: stdout)")
    tr.add_argument("--dot-every", type=int, default=0, help="write a DOT frame every k steps")
    tr.set_defaults(fn=cmd_trace)

    be = sub.add_parser("bench", help="cost report and efficiency fit over a term family")
    be.add_argument("--family", choices=FAMILIES, default="church-app")
    be.add_argument("--n", default="2..16", help="parameter range lo..hi")
    be.add_argument("--seed", type=int, default=0)
    be.add_argument("--count", type=int, default=100)
    be.add_argument("--fuel", type=int, default=4 * 10**5)
    be.add_argument("--trace-out", help="directory for JSON records")
    be.set_defaults(fn=cmd_bench)

    ch = sub.add_parser("check", help="run every acceptance criterion")
    ch.set_defaults(fn=cmd_check)
    return p


def main(argv=None, out=print) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "fuel", 1) <= 0:
        out("error: --fuel must be positive")
        return PARSE
    try:
        return args.fn(args, out)
    except (ParseError, ValueError, OSError) as exc:
        out(f"error: {exc}")
        return PARSE


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
