import json

import pytest

from dgoim.cli import BOUND, FUEL, OK, PARSE, main


def call(*argv):
    lines = []
    code = main(list(argv), out=lines.append)
    return code, lines


def test_both_machines_agree():
    code, lines = call("eval", "--machine", "both", r"(\x. x)(\z. z)")
    assert code == OK
    recs = [json.loads(line) for line in lines]
    assert [r["machine"] for r in recs] == ["sam", "dgoim"]
    assert recs[1]["related"] is True and recs[1]["o"] == 13


def test_fuel_exhaustion_exit_code():
    code, lines = call("eval", "--machine", "dgoim", "--fuel", "1000", r"(\x. x x)(\x. x x)")
    assert code == FUEL
    assert json.loads(lines[-1])["halted"] is False


@pytest.mark.parametrize("src", ["\\x.", r"x[x <- \z.z]", "y", "(\\x. x"])
def test_bad_input_exit_code(src):
    assert call("eval", src)[0] == PARSE


def test_bound_violation_exit_code():
    # substitution steps outnumber beta steps here
    assert call("eval", "--machine", "sam", r"(\x. x x) (\y. y)")[0] == BOUND


def test_lockstep_mode():
    code, lines = call("eval", "--machine", "lockstep", r"(\x. \y. y) (\z. z)")
    assert code == OK
    assert lines[-2].startswith("verdict\tpass")


def test_non_positive_fuel_is_rejected():
    assert call("eval", "--fuel", "0", r"\x. x")[0] == PARSE


def test_term_from_file(tmp_path):
    f = tmp_path / "t.lam"
    f.write_text(r"(\x. x) (\z. z)")
    assert call("eval", "--file", str(f))[0] == OK


def test_trace_writes_files(tmp_path):
    out = tmp_path / "tr"
    code, _ = call("trace", "--machine", "dgoim", "--trace-out", str(out), "--dot-every", "4",
                   r"(\x. x)(\z. z)")
    assert code == OK
    frames = (out / "dgoim.jsonl").read_text().splitlines()
    assert len(frames) == 15
    assert sorted(p.name for p in out.glob("*.dot")) == [
        "step_000000.dot", "step_000004.dot", "step_000008.dot", "step_000012.dot"]


def test_trace_sam_and_lockstep_to_stdout():
    code, lines = call("trace", "--machine", "sam", r"(\x. x)(\z. z)")
    assert code == OK and [line.split("\t")[1] for line in lines] == \
        ["O1", "O3", "B", "O2", "O3", "SOne"]
    code, lines = call("trace", "--machine", "lockstep", r"(\x. x)(\z. z)")
    assert code == OK and len(lines) == 7


def test_bench_reports_a_fit(tmp_path):
    code, lines = call("bench", "--family", "church-app", "--n", "2..16",
                       "--trace-out", str(tmp_path))
    assert code == OK
    text = "\n".join(lines)
    assert "family: church-app" in text and "spread:" in text
    assert len((tmp_path / "bench.jsonl").read_text().splitlines()) == 15


def test_console_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "dgoim.cli", "eval", r"(\x. x)(\z. z)"],
                       capture_output=True, text=True)
    assert r.returncode == OK
    assert len(r.stdout.splitlines()) == 2
