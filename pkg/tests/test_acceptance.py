"""Acceptance criteria 1-8, each at its stated bound and time limit.

Every test records a ``criterion N: PASS|FAIL`` line that pytest prints in
the terminal summary.
"""

import time
from contextlib import contextmanager

import pytest

from ccsim.axioms import AXIOM_SETS
from ccsim.harness import (
    POLARITY_MIXES,
    EnumerationBounds,
    coarsest_precong_sweep,
    completeness_sweep,
    degeneration_sweep,
    hierarchy_sweep,
    nonaxiomatizability_witness,
)
from ccsim.harness import soundness_sweep
from ccsim.proofs import Proof, verify_proof
from ccsim.provers import prover_for
from ccsim.semantics import Checker
from ccsim.syntax import parse
from ccsim.table import TermTable
from ccsim.terms import Alphabet


@contextmanager
def criterion(record, n, what, limit=None):
    state = {"ok": False, "detail": ""}
    t0 = time.perf_counter()
    try:
        yield state
    finally:
        dt = time.perf_counter() - t0
        in_time = limit is None or dt < limit
        ok = state["ok"] and in_time
        bound = f" < {limit:g}s" if limit else ""
        note = f"; {state['detail']}" if state["detail"] else ""
        record(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {what} ({dt:.1f}s{bound}{note})")
    assert in_time, f"criterion {n} took {dt:.1f}s, limit {limit}s"


# --- 1 ----------------------------------------------------------------------

CS = Alphabet.of(r="a,b,c")
RL = Alphabet.of(r="a_r,b_r", l="a_l")
BI = Alphabet.of(r="a_r", bi="a_bi")


def _verdicts():
    p = lambda s, al=CS: parse(s, al)  # noqa: E731
    conf = Checker("conf_sim")
    pre = Checker("conf_precong")
    ceq = Checker("conf_equiv")
    cc = Checker("cc_sim", RL)
    ccb = Checker("cc_sim", BI)
    ccbe = Checker("cc_equiv", BI)
    return [
        ("0 <=CS ab", conf.holds(p("0"), p("ab")), True),
        ("not ac <=CS ab+ac", conf.holds(p("ac"), p("ab+ac")), False),
        ("ap+aq <= ap instance", pre.holds(p("ab+ac"), p("ab")), True),
        ("ap <= a(p+q) instance", pre.holds(p("ab"), p("a(b+c)")), True),
        ("ab =CS ab+a(b+c)", ceq.holds(p("ab"), p("ab+a(b+c)")), True),
        ("a(b+c) not <=RS ab", Checker("ready_sim").holds(p("a(b+c)"), p("ab")), False),
        ("a(b+c) not <=S ab", Checker("plain_sim").holds(p("a(b+c)"), p("ab")), False),
        ("x <= x + a_r y instance", cc.holds(p("b_r", RL), p("b_r + a_r", RL)), True),
        ("x + a_l y <= x instance", cc.holds(p("b_r + a_l", RL), p("b_r", RL)), True),
        ("p_1 =CC q_1", ccbe.holds(p("a_r.a_bi.a_r", BI), p("a_r.a_bi.a_r + a_r.a_bi", BI)), True),
        ("not p-_1 <=CC q-_1", ccb.holds(p("a_bi.a_r", BI), p("a_bi.a_r + a_bi", BI)), False),
    ]


def test_criterion_1_example_verdicts(record):
    with criterion(record, 1, "eleven example verdicts", 1.0) as st:
        rows = _verdicts()
        wrong = [name for name, got, want in rows if got != want]
        st["ok"] = len(rows) == 11 and not wrong
        st["detail"] = f"{11 - len(wrong)}/11 reproduced"
    assert not wrong, wrong


# --- 2 ----------------------------------------------------------------------


def test_criterion_2_soundness(record):
    with criterion(record, 2, "soundness, 4 axiom sets x 4 polarity mixes, depth 3 width 2", 300) as st:
        bad = []
        for name, A in AXIOM_SETS.items():
            for mix, al in POLARITY_MIXES.items():
                rep = soundness_sweep(A, EnumerationBounds(3, 2, al))
                if not rep.ok:
                    bad.append((name, mix, [v.to_dict() for v in rep.violations[:3]]))
        st["ok"] = not bad
        st["detail"] = f"{len(bad)} failing combinations"
    assert not bad, bad


# --- 3 and 8 ----------------------------------------------------------------

COMPLETENESS = [
    ("cc_sim", Alphabet.of(r="a_r", l="b_l")),
    ("conf_precong", Alphabet.of(r="a,b")),
    ("conf_equiv", Alphabet.of(r="a,b")),
    ("cc_equiv", Alphabet.of(r="a_r", l="b_l")),
]


@pytest.fixture(scope="module")
def completeness_runs():
    t0 = time.perf_counter()
    reports = [completeness_sweep(None, rel, EnumerationBounds(3, 2, al)) for rel, al in COMPLETENESS]
    return reports, time.perf_counter() - t0


def test_criterion_3_completeness(record, completeness_runs):
    reports, elapsed = completeness_runs
    ok = all(r.ok for r in reports)
    in_time = elapsed < 600
    record(
        f"criterion 3: {'PASS' if ok and in_time else 'FAIL'}  completeness, 4 relation/axiom pairs, depth 3 width 2 "
        f"({elapsed:.1f}s < 600s; {sum(r.counts['proofs'] for r in reports)} proofs)"
    )
    assert ok, [r.to_dict() for r in reports if not r.ok]
    assert in_time


def test_criterion_8_proof_integrity(record, completeness_runs):
    reports, _ = completeness_runs
    with criterion(record, 8, "proof integrity") as st:
        proof_bad = [v for r in reports for v in r.violations if v.expected in ("valid proof",) or "unsound" in v.evidence]
        steps = sum(r.counts["axiom_steps_checked"] for r in reports)
        # independent replay through the JSON format on a smaller space
        replayed = failed = 0
        for rel, al in COMPLETENESS:
            prover = prover_for(rel, al)
            sem = Checker(prover.axiom_set.target, al)
            ts = TermTable(sorted(al.names), 2, 2).terms()
            for p in ts:
                for q in ts:
                    pr = prover.prove(p, q)
                    if pr is None:
                        continue
                    replayed += 1
                    back = Proof.from_json(pr.to_json())
                    if not verify_proof(back) or not all(sem.holds(s.lhs, s.rhs) for s in back.axiom_steps()):
                        failed += 1
        st["ok"] = not proof_bad and failed == 0 and steps > 0
        st["detail"] = f"{steps} axiom steps checked in sweeps, {replayed} proofs replayed from JSON, {failed} rejected"
    assert not proof_bad and failed == 0


# --- 4 ----------------------------------------------------------------------


def test_criterion_4_witness(record):
    with criterion(record, 4, "witness family, n = 1..10", 5.0) as st:
        reps = [nonaxiomatizability_witness(n) for n in range(1, 11)]
        st["ok"] = all(r.ok for r in reps)
        st["detail"] = f"{sum(r.ok for r in reps)}/10 pass all three checks"
    assert st["ok"], [r.to_dict() for r in reps if not r.ok]


# --- 5 ----------------------------------------------------------------------


def test_criterion_5_coarsest_precongruence(record):
    with criterion(record, 5, "distinguishing contexts and closure, depth 2", 120) as st:
        rep = coarsest_precong_sweep(EnumerationBounds(2, 2, Alphabet.of(r="a,b", fresh="c,d")))
        c = rep.counts
        st["ok"] = rep.ok and c["candidates"] > 0 and c["separated"] == c["candidates"]
        st["detail"] = f"{c['separated']}/{c['candidates']} separated, {c['closure_checks']} closure checks"
    assert st["ok"], rep.to_json()


# --- 6 ----------------------------------------------------------------------


def test_criterion_6_hierarchy(record):
    with criterion(record, 6, "ready duality and RS-equivalence inside CS-equivalence, depth 3, {a,b,c}", 300) as st:
        rep = hierarchy_sweep(EnumerationBounds(3, 2, Alphabet.of(r="a,b,c"), max_terms=300_000))
        st["ok"] = rep.ok
        st["detail"] = f"{rep.examined} pairs, {rep.counts['evaluated_equal_initials']} evaluated"
    assert rep.ok, rep.to_json()


# --- 7 ----------------------------------------------------------------------


def test_criterion_7_degeneration(record):
    with criterion(record, 7, "single-polarity degeneration, depth 3") as st:
        rep = degeneration_sweep(["a", "b"], 3, 2)
        st["ok"] = rep.ok
        st["detail"] = ", ".join(f"{k}={v}" for k, v in sorted(rep.counts.items()))
    assert rep.ok, rep.to_json()
