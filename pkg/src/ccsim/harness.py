"""Exhaustive sweeps over bounded term spaces and the counterexample families.

Every sweep is deterministic: the same bounds give the same report, and
the JSON form leaves out wall-clock timings.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional, Sequence

import numpy as np

from .axioms import (
    AxiomSchema,
    AxiomSet,
    PNil,
    PSum,
    PVar,
    instantiate,
    match,
    positions,
    replace_at,
    subterm_at,
)
from .kernels import hierarchy_stream, relation_matrix
from .proofs import ProofChecker
from .provers import prover_for
from .semantics import Checker, RelationKind
from .syntax import format_term, parse
from .table import TermTable
from .terms import NIL, Alphabet, AlphabetError, Polarity, Term, iterated_prefix, prefix, prune

__all__ = [
    "EnumerationBounds",
    "Violation",
    "SweepReport",
    "WitnessReport",
    "FreshPoolExhausted",
    "POLARITY_MIXES",
    "enumerate_terms",
    "term_table",
    "soundness_sweep",
    "completeness_sweep",
    "coarsest_precong_sweep",
    "nonaxiomatizability_witness",
    "hierarchy_sweep",
    "degeneration_sweep",
]


class FreshPoolExhausted(AlphabetError):
    pass


@dataclass(frozen=True)
class EnumerationBounds:
    max_depth: int
    max_width: int
    alphabet: Alphabet
    max_terms: Optional[int] = None

    def describe(self) -> dict:
        return {
            "max_depth": self.max_depth,
            "max_width": self.max_width,
            "alphabet": self.alphabet.describe(),
        }


# Two-action alphabets covering each polarity mix.
POLARITY_MIXES: dict[str, Alphabet] = {
    "r+l": Alphabet.of(r="a", l="b"),
    "r+bi": Alphabet.of(r="a", bi="b"),
    "all-bi": Alphabet.of(bi="a,b"),
    "plain": Alphabet.of(r="a,b"),
}


def term_table(bounds: EnumerationBounds) -> TermTable:
    return TermTable(bounds.alphabet.names, bounds.max_depth, bounds.max_width, bounds.max_terms)


def enumerate_terms(bounds: EnumerationBounds) -> Iterator[Term]:
    """Every canonical term within ``bounds`` once, ordered by depth layer.

    Raises :class:`~ccsim.table.EnumerationTooLarge` when the count exceeds
    the cap (``bounds.max_terms`` or ``CCSIM_MAX_TERMS``).
    """
    return iter(term_table(bounds))


@dataclass(frozen=True)
class Violation:
    lhs: Term
    rhs: Term
    expected: str
    got: str
    evidence: str = ""

    def to_dict(self) -> dict:
        return {
            "lhs": format_term(self.lhs),
            "rhs": format_term(self.rhs),
            "expected": self.expected,
            "got": self.got,
            "evidence": self.evidence,
        }


@dataclass
class SweepReport:
    name: str
    bounds: dict
    examined: int = 0
    violations: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    elapsed: float = 0.0
    max_violations: int = 50

    @property
    def ok(self) -> bool:
        return not self.violations and not self.counts.get("violations_dropped", 0)

    def add(self, v: Violation) -> None:
        if len(self.violations) < self.max_violations:
            self.violations.append(v)
        else:
            self.counts["violations_dropped"] = self.counts.get("violations_dropped", 0) + 1

    def to_dict(self) -> dict:
        return {
            "sweep": self.name,
            "bounds": self.bounds,
            "examined": self.examined,
            "counts": dict(sorted(self.counts.items())),
            "violations": [v.to_dict() for v in self.violations],
            "ok": self.ok,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def summary(self) -> str:
        state = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        extra = "".join(f", {k}={v}" for k, v in sorted(self.counts.items()))
        return f"{self.name}: {self.examined} examined{extra}; {state} ({self.elapsed:.1f}s)"


@dataclass
class WitnessReport:
    n: int
    p: Term
    q: Term
    checks: list = field(default_factory=list)  # (name, passed, detail)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": format_term(self.p),
            "q": format_term(self.q),
            "checks": [{"check": c, "passed": ok, "detail": d} for c, ok, d in self.checks],
            "ok": self.ok,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


# --- soundness --------------------------------------------------------------


def _pool(alphabet: Alphabet) -> list[Term]:
    """Closed terms used for variables that only occur on the target side."""
    return [NIL] + [prefix(a) for a in alphabet.names]


def _completions(schema: AxiomSchema, sigma: dict, alphabet: Alphabet, pool: Sequence[Term]):
    free_t = sorted(v for v in schema.variables() if v not in sigma)
    free_a = sorted(v for v in schema.action_variables() if v not in sigma)
    slots = schema.action_variables()
    a_opts = []
    for v in free_a:
        pol = slots[v].polarity
        opts = [
            a
            for a in alphabet.names
            if pol == "any"
            or (pol == "r" and alphabet.polarity(a) is Polarity.COVARIANT)
            or (pol == "l" and alphabet.polarity(a) is Polarity.CONTRAVARIANT)
        ]
        a_opts.append(opts)
    for terms in product(pool, repeat=len(free_t)):
        for acts in product(*a_opts):
            out = dict(sigma)
            out.update(zip(free_t, terms))
            out.update(zip(free_a, acts))
            yield out


def _sub_sums(node: Term):
    """Every split of ``node`` into a nonempty part and the remaining context."""
    summ = node.summands
    k = len(summ)
    if k == 0:
        yield node, NIL
        return
    for mask in range(1, 1 << k):
        part = Term(s for i, s in enumerate(summ) if mask >> i & 1)
        ctx = Term(s for i, s in enumerate(summ) if not mask >> i & 1)
        yield part, ctx


def schema_instances(schema: AxiomSchema, node: Term, direction: str, alphabet: Alphabet, pool: Sequence[Term]):
    """Closed instances ``(sigma, source, target, context)`` whose source
    plus a sum context equals ``node``."""
    src, tgt = schema.sides(direction)
    for part, ctx in _sub_sums(node):
        for sigma in match(src, part, {}, alphabet):
            for full in _completions(schema, sigma, alphabet, pool):
                if not schema.condition_holds(full, alphabet):
                    continue
                yield full, part, instantiate(tgt, full), ctx


def _flat_vars(pat) -> Optional[frozenset]:
    """Variables of a pattern built from variables, 0 and +; None otherwise."""
    if isinstance(pat, PVar):
        return frozenset((pat.name,))
    if isinstance(pat, PNil):
        return frozenset()
    if isinstance(pat, PSum):
        out = frozenset()
        for part in pat.parts:
            sub = _flat_vars(part)
            if sub is None:
                return None
            out |= sub
        return out
    return None


def aci_identity(schema: AxiomSchema) -> bool:
    """True when both sides are sums of the same variables (and 0).

    Every closed instance of such a schema has identical sides once terms are
    kept in sum normal form, so it relates each term to itself.
    """
    lhs, rhs = _flat_vars(schema.lhs), _flat_vars(schema.rhs)
    return lhs is not None and lhs == rhs


def soundness_sweep(
    axioms: AxiomSet,
    bounds: EnumerationBounds,
    pool: Optional[Sequence[Term]] = None,
) -> SweepReport:
    """Check every instance of every schema at every position of every
    enumerated term against the axiom set's target relation.

    Equations are used in both directions.  Inequations ``l <= r`` are also
    located through their right-hand side: if ``r`` matches a node, the term
    with that node grown to ``l`` must be below the original term.

    Schemas for which :func:`aci_identity` holds are discharged once by
    reflexivity instead of instance by instance.
    """
    t0 = time.perf_counter()
    al = bounds.alphabet
    rel = Checker(axioms.target, al)
    pool = list(pool) if pool is not None else _pool(al)
    report = SweepReport(f"soundness:{axioms.name}", {**bounds.describe(), "target": axioms.target.value})
    seen: set = set()
    instances = 0
    live = [s for s in axioms.schemata if not aci_identity(s)]
    report.counts["aci_identities"] = len(axioms.schemata) - len(live)
    for t in enumerate_terms(bounds):
        for pos in positions(t):
            node = subterm_at(t, pos)
            for schema in live:
                for direction in ("lr", "rl"):
                    for sigma, part, new, ctx in schema_instances(schema, node, direction, al, pool):
                        instances += 1
                        moved = replace_at(t, pos, new + ctx)
                        if schema.kind == "le" and direction == "rl":
                            before, after = moved, t
                        else:
                            before, after = t, moved
                        key = (before, after)
                        if key in seen:
                            continue
                        seen.add(key)
                        if not rel.holds(before, after):
                            sub = ", ".join(
                                f"{k}:={v if isinstance(v, str) else format_term(v)}" for k, v in sorted(sigma.items())
                            )
                            report.add(
                                Violation(
                                    before,
                                    after,
                                    axioms.target.value,
                                    "fails",
                                    f"{schema.name} ({direction}) at {list(pos)} with {sub}",
                                )
                            )
        report.examined += 1
    report.counts["instances"] = instances
    report.counts["distinct_pairs"] = len(seen)
    report.elapsed = time.perf_counter() - t0
    return report


# --- completeness -----------------------------------------------------------


def completeness_sweep(
    prover,
    relation: RelationKind | str,
    bounds: EnumerationBounds,
    backend: Optional[str] = None,
    step_check: bool = True,
) -> SweepReport:
    """Compare proof existence with the semantic verdict on every pair.

    ``prover`` may be None to use the default prover for ``relation``.
    Every emitted proof is replayed by the proof checker, and (with
    ``step_check``) every axiom instance it uses is checked semantically.
    """
    t0 = time.perf_counter()
    kind = RelationKind(relation)
    al = bounds.alphabet
    prover = prover or prover_for(kind, al)
    axioms = prover.axiom_set
    table = term_table(bounds)
    verdict = relation_matrix(table, kind, al, backend)
    terms = table.terms()
    checker = ProofChecker(axioms, al)
    sem = Checker(axioms.target, al)
    report = SweepReport(f"completeness:{axioms.name}", {**bounds.describe(), "relation": kind.value})
    proofs = steps_checked = 0
    for i, p in enumerate(terms):
        row = verdict[i]
        for j, q in enumerate(terms):
            step = prover.build(p, q)
            want = bool(row[j])
            if step is None:
                if want:
                    report.add(Violation(p, q, "proof", "none", f"{kind.value} holds but no proof was built"))
                continue
            proofs += 1
            if not want:
                report.add(Violation(p, q, "no proof", "proof", f"{kind.value} fails yet a proof was built"))
            res = checker.verify(step)
            if not res.ok or step.lhs is not p or step.rhs is not q:
                report.add(Violation(p, q, "valid proof", "invalid", res.message or "wrong conclusion"))
                continue
            if step_check:
                for s in checker.fresh:
                    if s.rule != "axiom":
                        continue
                    steps_checked += 1
                    if not sem.holds(s.lhs, s.rhs):
                        report.add(
                            Violation(s.lhs, s.rhs, axioms.target.value, "fails", f"unsound {s.schema} step")
                        )
        report.examined += len(terms)
    report.counts["proofs"] = proofs
    report.counts["axiom_steps_checked"] = steps_checked
    report.elapsed = time.perf_counter() - t0
    return report


# --- coarsest precongruence -------------------------------------------------


def _cannot_do(q: Term, a: str, b: str) -> bool:
    """No a-successor of ``q`` has a b-transition."""
    return all(b not in q1.initials for c, q1 in q.summands if c == a)


def coarsest_precong_sweep(bounds: EnumerationBounds) -> SweepReport:
    """(i) closure of the conformance precongruence under prefix and sum
    contexts; (ii) for each pair related by conformance simulation whose
    right initials are not contained in the left ones, a context built from
    a fresh action that separates them."""
    t0 = time.perf_counter()
    al = bounds.alphabet
    fresh = [a.name for a in al.fresh]
    if not fresh:
        raise FreshPoolExhausted("the alphabet needs a nonempty fresh pool")
    terms = list(enumerate_terms(bounds))
    pre = Checker(RelationKind.CONF_PRECONG)
    sim = Checker(RelationKind.CONF_SIM)
    report = SweepReport("coarsest_precong", {**bounds.describe(), "fresh": fresh})
    closure = candidates = separated = 0
    for p in terms:
        for q in terms:
            report.examined += 1
            if pre.holds(p, q):
                for a in al.names:
                    closure += 1
                    if not pre.holds(prefix(a, p), prefix(a, q)):
                        report.add(Violation(prefix(a, p), prefix(a, q), "conf_precong", "fails", "prefix closure"))
                for r in terms:
                    closure += 1
                    if not pre.holds(p + r, q + r):
                        report.add(Violation(p + r, q + r, "conf_precong", "fails", f"sum closure with {format_term(r)}"))
                continue
            if not sim.holds(p, q) or q.initials <= p.initials:
                continue
            candidates += 1
            a = min(q.initials - p.initials)
            b = next((f for f in fresh if _cannot_do(q, a, f)), None)
            if b is None:
                raise FreshPoolExhausted(f"no fresh action avoids a.b traces of {format_term(q)}")
            ctx = prefix(a, prefix(b))
            if sim.holds(ctx + p, ctx + q):
                report.add(
                    Violation(ctx + p, ctx + q, "not conf_sim", "conf_sim", f"context {format_term(ctx)} + . fails")
                )
            else:
                separated += 1
    report.counts.update(closure_checks=closure, candidates=candidates, separated=separated)
    report.elapsed = time.perf_counter() - t0
    return report


# --- non-axiomatisability witness -------------------------------------------


def witness_family(n: int, mono: str, bi: str) -> tuple[Term, Term, Term, Term]:
    """``(p_n, q_n, p_n^-, q_n^-)`` for the mono-variant action ``mono`` and
    bivariant action ``bi``."""
    end = prefix(mono)
    pm = iterated_prefix(bi, n, end)
    qm = pm + iterated_prefix(bi, n, NIL)
    p = prefix(mono, pm)
    return p, p + prefix(mono, iterated_prefix(bi, n, NIL)), pm, qm


def nonaxiomatizability_witness(n: int, alphabet: Optional[Alphabet] = None) -> WitnessReport:
    """Build ``p_n = a.b^n.a.0`` and ``q_n = p_n + a.b^n.0`` (``a`` mono-variant,
    ``b`` bivariant) and run the three checks: cc-equivalence of the pair,
    failure of the reduced pair below the head prefix, and the pruning
    invariant at depth ``n + 2``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    al = alphabet or Alphabet.of(r="a_r", bi="a_bi")
    if not al.bivariant:
        raise AlphabetError("the witness family needs a bivariant action")
    mono_pool = sorted(al.covariant) or sorted(al.contravariant)
    if not mono_pool:
        raise AlphabetError("the witness family needs a covariant or contravariant action")
    mono, bi = mono_pool[0], sorted(al.bivariant)[0]
    p, q, pm, qm = witness_family(n, mono, bi)
    cc = Checker(RelationKind.CC_SIM, al)
    bis = Checker(RelationKind.BISIM)
    rep = WitnessReport(n, p, q)
    eq = cc.holds(p, q) and cc.holds(q, p)
    rep.checks.append(("cc_equiv(p_n, q_n)", eq, "holds" if eq else "fails"))
    if n >= 1:
        # with a contravariant mono action the failing direction flips
        if mono in al.covariant:
            label, fails = "not cc_sim(p_n^-, q_n^-)", not cc.holds(pm, qm)
        else:
            label, fails = "not cc_sim(q_n^-, p_n^-)", not cc.holds(qm, pm)
        rep.checks.append((label, fails, "fails as required" if fails else "unexpectedly holds"))
    else:
        rep.checks.append(("not cc_sim(p_n^-, q_n^-)", True, "skipped: q_0^- collapses to p_0^-"))
    m = n + 2
    inv = bis.holds(prune(p, m), p)
    sep = not bis.holds(prune(q, m), prune(p, m))
    rep.checks.append(
        ("pruning invariant", inv and sep, f"prune(p_n,{m}) ~ p_n: {inv}; prune(q_n,{m}) !~ prune(p_n,{m}): {sep}")
    )
    return rep


# --- hierarchy --------------------------------------------------------------

HIERARCHY_WITNESSES = (
    ("conf_equiv", "a.b.0", "a.b.0 + a.(b.0 + c.0)", True),
    ("ready_sim", "a.(b.0 + c.0)", "a.b.0", False),
    ("plain_sim", "a.(b.0 + c.0)", "a.b.0", False),
)

_CODES = {1: "ready_conf_sim(p,q) differs from ready_sim(q,p)", 2: "ready-sim equivalent but not conf-equivalent"}


def hierarchy_sweep(bounds: EnumerationBounds, backend: Optional[str] = None) -> SweepReport:
    """``ready_conf_sim(p, q) == ready_sim(q, p)`` and ready-simulation
    equivalence inside conformance equivalence, on all enumerated pairs.

    Pairs with different initial sets are decided by the guards alone (both
    sides false, no ready equivalence), so only equal-initials pairs are
    evaluated explicitly.
    """
    t0 = time.perf_counter()
    table = term_table(bounds)
    evaluated, nfound, found = hierarchy_stream(table, backend)
    report = SweepReport("hierarchy", bounds.describe())
    report.examined = table.n * table.n
    report.counts["evaluated_equal_initials"] = evaluated
    for i, j, code in found:
        report.add(Violation(table.term(int(i)), table.term(int(j)), "consistent", "violated", _CODES[int(code)]))
    if nfound > len(found):
        report.counts["violations_dropped"] = nfound - len(found)
    wal = Alphabet.of(r="a,b,c")
    for kind, lhs, rhs, want in HIERARCHY_WITNESSES:
        p, q = parse(lhs, wal), parse(rhs, wal)
        got = Checker(kind).holds(p, q)
        if got != want:
            report.add(Violation(p, q, f"{kind} {want}", str(got), "fixed witness"))
    report.counts["witnesses"] = len(HIERARCHY_WITNESSES)
    report.elapsed = time.perf_counter() - t0
    return report


# --- degeneration -----------------------------------------------------------


def degeneration_sweep(names: Sequence[str], max_depth: int, max_width: int, backend: Optional[str] = None) -> SweepReport:
    """On single-polarity alphabets cc-simulation must coincide with plain
    simulation (all covariant), inverse simulation (all contravariant) and
    bisimilarity (all bivariant)."""
    t0 = time.perf_counter()
    names = list(names)
    table = TermTable(sorted(names), max_depth, max_width)
    report = SweepReport("degeneration", {"max_depth": max_depth, "max_width": max_width, "actions": sorted(names)})
    plain = relation_matrix(table, RelationKind.PLAIN_SIM, None, backend)
    bis = relation_matrix(table, RelationKind.BISIM, None, backend)
    cases = (
        ("covariant", Alphabet.of(r=names), plain, "plain_sim"),
        # inverse simulation of (p, q) is plain simulation of (q, p)
        ("contravariant", Alphabet.of(l=names), plain.T, "inverse_sim"),
        ("bivariant", Alphabet.of(bi=names), bis, "bisim"),
    )
    for label, al, expect, other in cases:
        cc = relation_matrix(table, RelationKind.CC_SIM, al, backend)
        diff = np.argwhere(cc != expect)
        report.counts[f"mismatches_{label}"] = int(len(diff))
        for i, j in diff[:10]:
            report.add(
                Violation(
                    table.term(int(i)),
                    table.term(int(j)),
                    f"cc_sim == {other}",
                    f"cc_sim={bool(cc[i, j])}",
                    f"{label} alphabet",
                )
            )
    report.examined = 3 * table.n * table.n
    report.elapsed = time.perf_counter() - t0
    return report
