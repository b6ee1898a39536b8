"""Command-line front end.

Exit status: 0 when the verdict holds (or a sweep is clean), 1 when it
fails, 2 on usage, parse or resource errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .axioms import AXIOM_SETS, PatternSyntaxError, load_axiom_set
from .harness import (
    POLARITY_MIXES,
    EnumerationBounds,
    coarsest_precong_sweep,
    completeness_sweep,
    degeneration_sweep,
    enumerate_terms,
    hierarchy_sweep,
    nonaxiomatizability_witness,
    soundness_sweep,
)
from .proofs import check_proof
from .provers import BivariantAlphabetError, prover_for
from .semantics import Checker, Obstruction, RelationKind
from .syntax import ParseError, format_term, load_file, parse, parse_alphabet
from .table import EnumerationTooLarge, max_terms_from_env
from .terms import Alphabet, AlphabetError, Term

OK, FAIL, ERROR = 0, 1, 2

SWEEPS = ("soundness", "completeness", "coarsest", "hierarchy", "degeneration")


class UsageError(Exception):
    pass


def _emit(args, doc: dict, human: str) -> None:
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print(human)


def _alphabet(args, fallback: Optional[Alphabet] = None) -> Alphabet:
    if getattr(args, "mix", None):
        return POLARITY_MIXES[args.mix]
    if args.alphabet:
        return parse_alphabet(args.alphabet)
    return fallback if fallback is not None else Alphabet()


def _implicit(al: Alphabet, *terms: Term) -> Alphabet:
    """Declare every undeclared action of ``terms`` as covariant."""
    extra = sorted(set().union(*(t.actions() for t in terms)) - set(al.names))
    if not extra:
        return al
    groups = {
        "r": sorted(al.covariant) + extra,
        "l": sorted(al.contravariant),
        "bi": sorted(al.bivariant),
        "fresh": [a.name for a in al.fresh],
    }
    return Alphabet.of(**groups)


def _operands(args) -> tuple[Term, Term, Alphabet]:
    pf = load_file(args.file) if args.file else None
    al = _alphabet(args, pf.alphabet if pf else None)
    names = list(args.names)
    if args.lhs is None and args.rhs is None and len(names) != 2:
        raise UsageError("give two process names, or --lhs and --rhs")

    def one(inline: Optional[str], pos: int) -> Term:
        if inline is not None:
            return parse(inline, al if al.names else None)
        if pf is None:
            raise UsageError("process names need --file")
        return pf[names[pos]]

    lhs = one(args.lhs, 0)
    rhs = one(args.rhs, 1 if args.lhs is None else 0)
    return lhs, rhs, _implicit(al, lhs, rhs)


def _relation(args) -> RelationKind:
    if args.relation is None:
        raise UsageError("--relation is required")
    try:
        return RelationKind(args.relation)
    except ValueError:
        raise UsageError(f"unknown relation {args.relation!r}") from None


def _bounds(args, al: Alphabet) -> EnumerationBounds:
    if args.depth < 0 or args.width < 1:
        raise UsageError("--depth must be >= 0 and --width >= 1")
    return EnumerationBounds(args.depth, args.width, al, max_terms_from_env())


def run_check(args) -> int:
    kind = _relation(args)
    p, q, al = _operands(args)
    j = Checker(kind, al).judge(p, q)
    doc = {
        "relation": kind.value,
        "lhs": format_term(p),
        "rhs": format_term(q),
        "alphabet": al.describe(),
        "verdict": j.verdict,
    }
    lines = [f"{format_term(p)} {kind.value} {format_term(q)}: {'holds' if j.verdict else 'fails'}"]
    if isinstance(j.witness, Obstruction):
        doc["failing_pair"] = j.witness.describe()
        lines.append(f"  failing pair {j.witness.describe()}")
    elif isinstance(j.witness, tuple):
        doc["failing_pair"] = [str(w.describe() if hasattr(w, "describe") else w) for w in j.witness]
        lines.append(f"  failing pair {doc['failing_pair']}")
    elif isinstance(j.witness, frozenset):
        doc["witness_size"] = len(j.witness)
        lines.append(f"  witness relation with {len(j.witness)} pairs")
    _emit(args, doc, "\n".join(lines))
    return OK if j.verdict else FAIL


def run_prove(args) -> int:
    kind = _relation(args)
    p, q, al = _operands(args)
    try:
        prover = prover_for(kind, al)
    except BivariantAlphabetError as exc:
        raise UsageError(f"{exc}; see the witness command") from None
    if args.axioms and load_axiom_set(args.axioms).name != prover.axiom_set.name:
        raise UsageError(f"the {kind.value} prover emits proofs over {prover.axiom_set.name} only")
    proof = prover.prove(p, q)
    if proof is None:
        doc = {"relation": kind.value, "lhs": format_term(p), "rhs": format_term(q), "proof": None}
        _emit(args, doc, f"{format_term(p)} {kind.value} {format_term(q)}: not derivable")
        return FAIL
    res = check_proof(proof)
    if not res.ok:
        print(f"internal error: emitted proof rejected at step {res.failed_index}: {res.message}", file=sys.stderr)
        return ERROR
    if args.proof_out:
        Path(args.proof_out).write_text(proof.to_json(), encoding="utf-8")
    doc = proof.to_dict()
    doc["verified"] = True
    _emit(args, doc, proof.render())
    return OK


def run_sweep(args) -> int:
    kind = args.kind
    al = _alphabet(args, POLARITY_MIXES["plain"])
    if kind == "soundness":
        if not args.axioms:
            raise UsageError("soundness sweeps need --axioms")
        report = soundness_sweep(load_axiom_set(args.axioms), _bounds(args, al))
    elif kind == "completeness":
        rel = _relation(args)
        try:
            prover = prover_for(rel, al)
        except BivariantAlphabetError as exc:
            raise UsageError(str(exc)) from None
        report = completeness_sweep(prover, rel, _bounds(args, al), backend=args.backend)
    elif kind == "coarsest":
        if not al.fresh:
            al = Alphabet.of(
                r=sorted(al.covariant), l=sorted(al.contravariant), bi=sorted(al.bivariant), fresh=["f1", "f2"]
            )
        report = coarsest_precong_sweep(_bounds(args, al))
    elif kind == "hierarchy":
        if not args.alphabet:
            al = Alphabet.of(r="a,b,c")
        report = hierarchy_sweep(_bounds(args, al), backend=args.backend)
    else:
        names = list(al.names) if args.alphabet else ["a", "b"]
        _bounds(args, al)
        report = degeneration_sweep(names, args.depth, args.width, backend=args.backend)
    _emit(args, report.to_dict(), report.summary() + "".join(f"\n  {v.to_dict()}" for v in report.violations))
    return OK if report.ok else FAIL


def run_witness(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    al = _alphabet(args, None) if args.alphabet else None
    rep = nonaxiomatizability_witness(args.n, al)
    lines = [f"p_{rep.n} = {format_term(rep.p)}", f"q_{rep.n} = {format_term(rep.q)}"]
    lines += [f"  [{'pass' if ok else 'FAIL'}] {c}: {d}" for c, ok, d in rep.checks]
    _emit(args, rep.to_dict(), "\n".join(lines))
    return OK if rep.ok else FAIL


def run_enumerate(args) -> int:
    al = _alphabet(args, Alphabet.of(r="a"))
    terms = [format_term(t) for t in enumerate_terms(_bounds(args, al))]
    doc = {"bounds": _bounds(args, al).describe(), "count": len(terms), "terms": terms}
    _emit(args, doc, "\n".join(terms) + f"\n# {len(terms)} terms")
    return OK


def run_print(args) -> int:
    if args.file:
        pf = load_file(args.file)
        if args.json:
            doc = {
                "alphabet": pf.alphabet.describe(),
                "definitions": {k: format_term(v) for k, v in pf.definitions.items()},
            }
            print(json.dumps(doc, indent=2))
        else:
            print(pf.render(), end="")
        return OK
    if args.axioms:
        A = load_axiom_set(args.axioms)
        doc = {"name": A.name, "target": A.target.value, "schemata": [str(s) for s in A.schemata]}
        _emit(args, doc, "\n".join([f"{A.name} ({A.target.value})"] + [f"  {s}" for s in A.schemata]))
        return OK
    if args.lhs:
        t = parse(args.lhs)
        _emit(args, {"term": format_term(t)}, format_term(t))
        return OK
    raise UsageError("print needs --file, --axioms or --lhs")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--alphabet", help="alphabet classes, e.g. 'r: a, b; l: c; bi: d; fresh: z'")

    terms = argparse.ArgumentParser(add_help=False)
    terms.add_argument("names", nargs="*", help="process names defined in --file")
    terms.add_argument("--file", help="process file")
    terms.add_argument("--lhs", help="inline left term")
    terms.add_argument("--rhs", help="inline right term")
    terms.add_argument("--relation", help=", ".join(k.value for k in RelationKind))

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--depth", type=int, default=2)
    bounds.add_argument("--width", type=int, default=2)

    ap = argparse.ArgumentParser(prog="ccsim", description="Simulation preorders over BCCSP terms.")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", parents=[common, terms], help="decide a relation between two terms")
    p.set_defaults(run=run_check)

    p = sub.add_parser("prove", parents=[common, terms], help="derive a proof from the axioms")
    p.add_argument("--axioms", help=f"bundled set ({', '.join(AXIOM_SETS)}) or axiom file")
    p.add_argument("--proof-out", help="write the proof as JSON to this path")
    p.set_defaults(run=run_prove)

    p = sub.add_parser("sweep", parents=[common, bounds], help="run an exhaustive sweep")
    p.add_argument("kind", choices=SWEEPS)
    p.add_argument("--axioms", help="axiom set for soundness sweeps")
    p.add_argument("--relation", help="relation for completeness sweeps")
    p.add_argument("--mix", choices=sorted(POLARITY_MIXES), help="preset two-action alphabet")
    p.add_argument("--backend", choices=("numba", "numpy"), help="kernel backend")
    p.set_defaults(run=run_sweep)

    p = sub.add_parser("witness", parents=[common], help="build and check the p_n / q_n family")
    p.add_argument("--n", type=int)
    p.set_defaults(run=run_witness)

    p = sub.add_parser("enumerate", parents=[common, bounds], help="list all terms within bounds")
    p.set_defaults(run=run_enumerate)

    p = sub.add_parser("print", parents=[common], help="show a file, axiom set or term in canonical form")
    p.add_argument("--file")
    p.add_argument("--axioms")
    p.add_argument("--lhs")
    p.set_defaults(run=run_print)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else ERROR
    try:
        return args.run(args)
    except (
        UsageError,
        ParseError,
        PatternSyntaxError,
        AlphabetError,
        EnumerationTooLarge,
        FileNotFoundError,
        KeyError,
        ValueError,
    ) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"ccsim: error: {msg}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
