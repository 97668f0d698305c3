"""Acceptance criteria, one test each.

Every test prints a single ``criterion N (...): PASS|FAIL - detail`` line,
visible even under output capture.  The tolerances below are the pinned
acceptance parameters; do not loosen them to make a run pass.
"""

import time

import pytest

from dgoim import acceptance as A

SEED = 2024
RANDOM_TERMS = 500  # random closed well-named terms in the corpus
MAX_SIZE = 40
SAM_FUEL = 10**5
CHURCH_LO, CHURCH_HI = 2, 64
SPREAD_LIMIT = 3.0
FIT_GRID = range(0, 17)  # C, D in 0..16
DECOMP_INSTANCES = 200
DETERMINISM_TERMS = 50
ORACLE_SECONDS = 120
EFFICIENCY_SECONDS = 60


@pytest.fixture(scope="module")
def corpus():
    return A.corpus(SEED, RANDOM_TERMS, MAX_SIZE, SAM_FUEL)


@pytest.fixture
def report(capsys):
    def emit(n, name, outcome, seconds, extra=""):
        verdict = "PASS" if outcome.ok else "FAIL"
        with capsys.disabled():
            print(f"\ncriterion {n} ({name}): {verdict} - {outcome.detail} [{seconds:.1f}s{extra}]")
    return emit


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def test_corpus_shape(corpus):
    random_halting = [e for e in corpus if e.family == "random" and e.sam.halted]
    assert len(random_halting) == RANDOM_TERMS
    assert max(e.size for e in corpus if e.family == "random") <= MAX_SIZE
    assert any(e.family.startswith("church") for e in corpus)


def test_criterion_1_execution_examples(report):
    res, dt = timed(A.reference_examples)
    report(1, "execution examples", res, dt)
    assert res.ok, res.detail


def test_criterion_2_oracle_equivalence(corpus, report):
    res, dt = timed(A.oracle_equivalence, corpus)
    ok = res.ok and dt < ORACLE_SECONDS
    report(2, "oracle equivalence", A.Outcome(ok, res.detail), dt, f" < {ORACLE_SECONDS}s")
    assert res.ok, res.detail
    assert dt < ORACLE_SECONDS


def test_criterion_3_lockstep(corpus, report):
    res, dt = timed(A.lockstep_conformance, corpus)
    report(3, "lockstep step shapes", res, dt)
    assert res.ok, res.detail


def test_criterion_4_quantitative_bounds(corpus, report):
    res, dt = timed(A.quantitative_bounds, corpus)
    report(4, "quantitative bounds", res, dt)
    assert res.ok, res.detail


def test_criterion_5_efficiency(report):
    res, dt = timed(A.efficiency, CHURCH_LO, CHURCH_HI, SPREAD_LIMIT, FIT_GRID)
    ok = res.ok and dt < EFFICIENCY_SECONDS
    report(5, "efficiency fit", A.Outcome(ok, res.detail), dt, f" < {EFFICIENCY_SECONDS}s")
    assert res.ok, res.detail
    assert dt < EFFICIENCY_SECONDS


def test_criterion_6_structural_invariants(corpus, report):
    res, dt = timed(A.structural_invariants, corpus)
    report(6, "structural invariants", res, dt)
    assert res.ok, res.detail


def test_criterion_7_decomposition(report):
    res, dt = timed(A.decomposition, count=DECOMP_INSTANCES)
    report(7, "decomposition properties", res, dt)
    assert res.ok, res.detail


def test_criterion_8_determinism(corpus, report):
    res, dt = timed(A.determinism, corpus, DETERMINISM_TERMS)
    report(8, "determinism up to naming", res, dt)
    assert res.ok, res.detail
