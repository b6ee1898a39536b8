"""Proof objects for (in)equational logic over an axiom set.

A proof is a DAG of :class:`Step` nodes.  Each node records the conclusion
``lhs R rhs`` it claims together with the rule that justifies it:

``refl``    ``t R t``
``axiom``   one instance of a schema, rewriting the node at ``position`` of
            ``lhs`` (whose summands are the source instance plus ``context``)
``trans``   chains premises ``t0 R t1, t1 R t2, ...`` into ``t0 R tn``
``sym``     swaps an equation (equational proofs only)
``prefix``  ``a.s R a.t`` from ``s R t``
``sum``     ``s1 + ... + sn R t1 + ... + tn`` from the componentwise premises

Sub-proofs are shared, so a proof for a large pair reuses nodes proved for
smaller ones.  :class:`ProofChecker` re-derives every conclusion from the
rule without consulting any semantic decision procedure.
"""

from __future__ import annotations

import json
import weakref
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .axioms import AXIOM_SETS, AxiomSchema, AxiomSet, InvalidSubstitution, apply
from .syntax import format_term, parse
from .terms import NIL, Alphabet, Term, prefix as mkprefix, summation

__all__ = [
    "Step",
    "Proof",
    "ProofCheck",
    "ProofChecker",
    "InvalidStep",
    "refl",
    "axiom",
    "trans",
    "sym",
    "prefix",
    "plus",
    "verify_proof",
    "check_proof",
]

RULES = ("refl", "axiom", "trans", "sym", "prefix", "sum")


class InvalidStep(ValueError):
    pass


class Step:
    __slots__ = (
        "rule",
        "premises",
        "lhs",
        "rhs",
        "schema",
        "sigma",
        "direction",
        "position",
        "context",
        "action",
        "__weakref__",
    )

    def __init__(
        self,
        rule: str,
        lhs: Term,
        rhs: Term,
        premises: tuple = (),
        schema: Optional[str] = None,
        sigma: tuple = (),
        direction: str = "lr",
        position: tuple = (),
        context: Term = NIL,
        action: Optional[str] = None,
    ):
        self.rule = rule
        self.lhs = lhs
        self.rhs = rhs
        self.premises = premises
        self.schema = schema
        self.sigma = sigma
        self.direction = direction
        self.position = position
        self.context = context
        self.action = action

    @property
    def trivial(self) -> bool:
        return self.lhs is self.rhs

    def substitution(self) -> dict:
        return dict(self.sigma)

    def __repr__(self) -> str:
        return f"Step({self.rule}: {format_term(self.lhs)} ~ {format_term(self.rhs)})"


# --- builders ---------------------------------------------------------------
# The builders compute conclusions and collapse trivial sub-steps.  They are
# what the provers use; nothing here is trusted by the checker.


def refl(t: Term) -> Step:
    return Step("refl", t, t)


def _freeze_sigma(sigma: dict) -> tuple:
    return tuple(sorted(sigma.items()))


def axiom(
    schema: AxiomSchema,
    sigma: dict,
    direction: str = "lr",
    context: Term = NIL,
    alphabet: Optional[Alphabet] = None,
    term: Optional[Term] = None,
    position: tuple = (),
    check: bool = True,
) -> Step:
    """One schema instance.  ``check=False`` skips substitution validation
    (the proof checker repeats it anyway); provers use it in sweeps."""
    if schema.kind == "le" and direction != "lr":
        raise InvalidStep(f"{schema.name} only applies left to right")
    if term is None:
        src, tgt = schema.instance(sigma, alphabet, direction, check)
        return Step(
            "axiom",
            src + context,
            tgt + context,
            schema=schema.name,
            sigma=_freeze_sigma(sigma),
            direction=direction,
            context=context,
        )
    out = apply(schema, term, position, sigma, direction, alphabet, context)
    return Step(
        "axiom",
        term,
        out,
        schema=schema.name,
        sigma=_freeze_sigma(sigma),
        direction=direction,
        position=tuple(position),
        context=context,
    )


def trans(*steps: Step) -> Step:
    chain = [s for s in steps if not s.trivial]
    if not chain:
        return refl(steps[0].lhs)
    flat: list[Step] = []
    for s in chain:
        if s.rule == "trans":
            flat.extend(s.premises)
        else:
            flat.append(s)
    for a, b in zip(flat, flat[1:]):
        if a.rhs is not b.lhs:
            raise InvalidStep(f"transitivity gap: {format_term(a.rhs)} vs {format_term(b.lhs)}")
    if len(flat) == 1:
        return flat[0]
    return Step("trans", flat[0].lhs, flat[-1].rhs, tuple(flat))


def sym(s: Step) -> Step:
    if s.trivial:
        return s
    if s.rule == "sym":
        return s.premises[0]
    return Step("sym", s.rhs, s.lhs, (s,))


def prefix(a: str, s: Step) -> Step:
    if s.trivial:
        return refl(mkprefix(a, s.lhs))
    return Step("prefix", mkprefix(a, s.lhs), mkprefix(a, s.rhs), (s,), action=a)


def plus(*steps: Step) -> Step:
    if len(steps) == 1:
        return steps[0]
    lhs = summation(s.lhs for s in steps)
    rhs = summation(s.rhs for s in steps)
    if lhs is rhs and all(s.trivial for s in steps):
        return refl(lhs)
    return Step("sum", lhs, rhs, tuple(steps))


# --- checking ---------------------------------------------------------------


@dataclass(frozen=True)
class ProofCheck:
    ok: bool
    failed_index: Optional[int] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


class ProofChecker:
    """Re-derives conclusions of steps for one axiom set.

    Verified nodes are cached (weakly), so checking many proofs that share
    sub-proofs costs only the new nodes.
    """

    def __init__(self, axiom_set: AxiomSet, alphabet: Optional[Alphabet] = None):
        self.axiom_set = axiom_set
        self.alphabet = alphabet
        self.equational = axiom_set.kind == "eq"
        self._schemata = {s.name: s for s in axiom_set.schemata}
        self._ok: "weakref.WeakSet[Step]" = weakref.WeakSet()
        self.fresh: list[Step] = []  # nodes checked by the last verify()

    def check_step(self, s: Step) -> Optional[str]:
        """Return ``None`` when ``s`` follows from its premises' stated
        conclusions, else a reason.  Premises are not checked here."""
        r = s.rule
        ps = s.premises
        if r == "refl":
            if ps or s.lhs is not s.rhs:
                return "reflexivity needs identical sides and no premises"
            return None
        if r == "axiom":
            if ps:
                return "axiom steps take no premises"
            sch = self._schemata.get(s.schema)
            if sch is None:
                return f"schema {s.schema!r} is not in axiom set {self.axiom_set.name}"
            if sch.kind == "le" and s.direction != "lr":
                return f"inequation {sch.name} used right to left"
            if self.equational and sch.kind != "eq":
                return f"inequation {sch.name} in an equational proof"
            try:
                out = apply(sch, s.lhs, s.position, dict(s.sigma), s.direction, self.alphabet, s.context)
            except (InvalidSubstitution, KeyError, ValueError) as exc:
                return str(exc)
            if out is not s.rhs:
                return f"{sch.name} yields {format_term(out)}, not {format_term(s.rhs)}"
            return None
        if r == "trans":
            if len(ps) < 2:
                return "transitivity needs at least two premises"
            for a, b in zip(ps, ps[1:]):
                if a.rhs is not b.lhs:
                    return "transitivity premises do not chain"
            if s.lhs is not ps[0].lhs or s.rhs is not ps[-1].rhs:
                return "transitivity conclusion does not match its premises"
            return None
        if r == "sym":
            if not self.equational:
                return "symmetry is only available in equational proofs"
            if len(ps) != 1 or s.lhs is not ps[0].rhs or s.rhs is not ps[0].lhs:
                return "symmetry conclusion does not swap its premise"
            return None
        if r == "prefix":
            if len(ps) != 1 or s.action is None:
                return "prefix congruence needs one premise and an action"
            if self.alphabet is not None and not self.alphabet.declares(s.action):
                return f"action {s.action!r} is not in the alphabet"
            p = ps[0]
            if s.lhs is not mkprefix(s.action, p.lhs) or s.rhs is not mkprefix(s.action, p.rhs):
                return "prefix conclusion does not match its premise"
            return None
        if r == "sum":
            if len(ps) < 2:
                return "sum congruence needs at least two premises"
            if s.lhs is not summation(p.lhs for p in ps) or s.rhs is not summation(p.rhs for p in ps):
                return "sum conclusion does not match its premises"
            return None
        return f"unknown rule {r!r}"

    def verify(self, root: Step) -> ProofCheck:
        """Check every node reachable from ``root``; the failing index refers
        to :func:`linearize` order."""
        ok = self._ok
        self.fresh = []
        if root in ok:
            return ProofCheck(True)
        order = linearize(root, skip=ok)
        for idx, s in enumerate(order):
            why = self.check_step(s)
            if why is not None:
                return ProofCheck(False, idx, why)
            ok.add(s)
        self.fresh = order
        return ProofCheck(True)

    def verify_lines(self, lines: Sequence[Step]) -> ProofCheck:
        pos = {id(s): i for i, s in enumerate(lines)}
        for idx, s in enumerate(lines):
            for p in s.premises:
                if pos.get(id(p), idx) >= idx:
                    return ProofCheck(False, idx, "premise does not precede its use")
            why = self.check_step(s)
            if why is not None:
                return ProofCheck(False, idx, why)
        return ProofCheck(True)


def linearize(root: Step, skip=()) -> list[Step]:
    """Post-order listing of the DAG below ``root``, each node once; nodes in
    ``skip`` (and everything beneath them) are left out."""
    out: list[Step] = []
    seen: set[int] = set()
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            out.append(node)
            continue
        if id(node) in seen or node in skip:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for p in reversed(node.premises):
            if id(p) not in seen:
                stack.append((p, False))
    return out


# --- proof container and serialisation --------------------------------------


@dataclass
class Proof:
    lhs: Term
    rhs: Term
    axiom_set: AxiomSet
    root: Step
    alphabet: Optional[Alphabet] = None
    lines: Optional[list] = field(default=None, repr=False)

    @property
    def kind(self) -> str:
        return self.axiom_set.kind

    @property
    def relation(self) -> str:
        return "=" if self.kind == "eq" else "<="

    def steps(self) -> list[Step]:
        if self.lines is None:
            self.lines = linearize(self.root)
        return self.lines

    def axiom_steps(self) -> list[Step]:
        return [s for s in self.steps() if s.rule == "axiom"]

    def schema_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.axiom_steps():
            out[s.schema] = out.get(s.schema, 0) + 1
        return out

    def __len__(self) -> int:
        return len(self.steps())

    def render(self) -> str:
        rel = self.relation
        head = f"{format_term(self.lhs)} {rel} {format_term(self.rhs)}   [{self.axiom_set.name}]"
        lines = [head]
        idx = {id(s): i for i, s in enumerate(self.steps())}
        for i, s in enumerate(self.steps()):
            body = f"{format_term(s.lhs)} {rel} {format_term(s.rhs)}"
            lines.append(f"{i:4d}. {body}    {_justify(s, idx)}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        idx = {id(s): i for i, s in enumerate(self.steps())}
        steps = []
        for i, s in enumerate(self.steps()):
            d = {
                "index": i,
                "rule": s.rule,
                "lhs": format_term(s.lhs),
                "rhs": format_term(s.rhs),
                "premises": [idx[id(p)] for p in s.premises],
            }
            if s.rule == "axiom":
                d["schema"] = s.schema
                d["direction"] = s.direction
                d["position"] = list(s.position)
                d["substitution"] = {k: (v if isinstance(v, str) else format_term(v)) for k, v in s.sigma}
                d["action_variables"] = sorted(k for k, v in s.sigma if isinstance(v, str))
                if s.context is not NIL:
                    d["context"] = format_term(s.context)
            if s.rule == "prefix":
                d["action"] = s.action
            steps.append(d)
        out = {
            "claim": {"lhs": format_term(self.lhs), "rhs": format_term(self.rhs), "relation": self.relation},
            "axiom_set": self.axiom_set.name,
            "target": self.axiom_set.target.value,
            "steps": steps,
        }
        if self.alphabet is not None:
            out["alphabet"] = self.alphabet.describe()
        return out

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict, axiom_set: Optional[AxiomSet] = None, alphabet: Optional[Alphabet] = None) -> "Proof":
        from .syntax import parse_alphabet

        if axiom_set is None:
            axiom_set = AXIOM_SETS[data["axiom_set"]]
        if alphabet is None and data.get("alphabet"):
            alphabet = parse_alphabet(data["alphabet"])

        def term(text: str) -> Term:
            return parse(text, alphabet if alphabet and alphabet.actions else None)

        lines: list[Step] = []
        for i, d in enumerate(data["steps"]):
            try:
                prem = tuple(lines[j] for j in d.get("premises", []))
            except IndexError:
                raise InvalidStep(f"step {i} cites a later premise") from None
            sigma = ()
            if d["rule"] == "axiom":
                avars = set(d.get("action_variables", ()))
                sigma = tuple(
                    sorted((k, v if k in avars else term(v)) for k, v in d["substitution"].items())
                )
            lines.append(
                Step(
                    d["rule"],
                    term(d["lhs"]),
                    term(d["rhs"]),
                    prem,
                    schema=d.get("schema"),
                    sigma=sigma,
                    direction=d.get("direction", "lr"),
                    position=tuple(d.get("position", ())),
                    context=term(d["context"]) if "context" in d else NIL,
                    action=d.get("action"),
                )
            )
        claim = data["claim"]
        lhs, rhs = term(claim["lhs"]), term(claim["rhs"])
        root = lines[-1] if lines else refl(lhs)
        return cls(lhs, rhs, axiom_set, root, alphabet, lines if lines else None)

    @classmethod
    def from_json(cls, text: str, **kw) -> "Proof":
        return cls.from_dict(json.loads(text), **kw)


def _justify(s: Step, idx: dict) -> str:
    refs = ", ".join(str(idx[id(p)]) for p in s.premises)
    if s.rule == "axiom":
        sub = ", ".join(f"{k}:={v if isinstance(v, str) else format_term(v)}" for k, v in s.sigma)
        where = f" at {list(s.position)}" if s.position else ""
        ctx = f" in context + {format_term(s.context)}" if s.context is not NIL else ""
        arrow = "" if s.direction == "lr" else " (right to left)"
        return f"[{s.schema}{arrow}{where}{ctx}; {sub}]"
    if s.rule == "prefix":
        return f"[prefix {s.action}; {refs}]"
    if s.rule == "refl":
        return "[refl]"
    return f"[{s.rule}; {refs}]"


def check_proof(proof: Proof, checker: Optional[ProofChecker] = None) -> ProofCheck:
    """Replay ``proof``; report the index of the first illegal step."""
    chk = checker or ProofChecker(proof.axiom_set, proof.alphabet)
    if proof.lines is not None:
        res = chk.verify_lines(proof.lines)
    else:
        res = chk.verify(proof.root)
    if not res:
        return res
    if proof.root.lhs is not proof.lhs or proof.root.rhs is not proof.rhs:
        return ProofCheck(False, len(proof.steps()) - 1, "final step does not conclude the claim")
    return res


def verify_proof(proof: Proof, checker: Optional[ProofChecker] = None) -> bool:
    return check_proof(proof, checker).ok
