"""Decision procedures for the simulation-style relations on finite terms.

Terms are finite trees, so the greatest fixpoint of every transfer condition
coincides with a memoised top-down recursion over subterm pairs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .terms import Alphabet, AlphabetError, Polarity, Term

__all__ = [
    "RelationKind",
    "Judgement",
    "Obstruction",
    "Checker",
    "check",
    "holds",
    "cc_simulates",
    "cc_equiv",
    "conf_simulates",
    "conf_precong",
    "conf_equiv",
    "plain_simulates",
    "inverse_simulates",
    "bisimilar",
    "ready_simulates",
    "ready_conf_simulates",
    "is_witness",
]


class RelationKind(str, enum.Enum):
    CC_SIM = "cc_sim"
    CC_EQUIV = "cc_equiv"
    CONF_SIM = "conf_sim"
    CONF_PRECONG = "conf_precong"
    CONF_EQUIV = "conf_equiv"
    PLAIN_SIM = "plain_sim"
    INVERSE_SIM = "inverse_sim"
    BISIM = "bisim"
    READY_SIM = "ready_sim"
    READY_CONF_SIM = "ready_conf_sim"

    @property
    def needs_alphabet(self) -> bool:
        return self in (RelationKind.CC_SIM, RelationKind.CC_EQUIV)

    @property
    def symmetric(self) -> bool:
        return self in (RelationKind.CC_EQUIV, RelationKind.CONF_EQUIV, RelationKind.BISIM)


@dataclass(frozen=True)
class Obstruction:
    """A pair at which a transfer clause cannot be met.

    ``move`` is the unmatched transition ``(action, target)``; it belongs to
    ``lhs`` when ``side == "lhs"`` and to ``rhs`` otherwise.  For failed
    initial-set guards ``move`` is ``None``.
    """

    lhs: Term
    rhs: Term
    clause: str
    side: Optional[str] = None
    move: Optional[tuple[str, Term]] = None

    def describe(self) -> str:
        from .syntax import format_term

        head = f"({format_term(self.lhs)}, {format_term(self.rhs)})"
        if self.move is None:
            return f"{head}: {self.clause}"
        a, t = self.move
        return f"{head}: {self.clause}; unmatched {self.side} move -{a}-> {format_term(t)}"


Witness = Union[frozenset, Obstruction, tuple, None]


@dataclass(frozen=True)
class Judgement:
    kind: RelationKind
    lhs: Term
    rhs: Term
    verdict: bool
    witness: Witness = None

    def __bool__(self) -> bool:
        return self.verdict


# A relation is described by a guard on the pair and two predicates choosing
# which actions need forward matching (moves of the left side) and backward
# matching (moves of the right side).
_Pred = Callable[[str, Term, Term], bool]


@dataclass(frozen=True)
class _Clauses:
    forward: Optional[_Pred]
    backward: Optional[_Pred]
    guard: Optional[Callable[[Term, Term], bool]] = None
    guard_name: str = ""


def _always(a, p, q):
    return True


def _clauses(kind: RelationKind, alphabet: Optional[Alphabet]) -> _Clauses:
    if kind is RelationKind.CC_SIM:
        if alphabet is None:
            raise AlphabetError("covariant-contravariant simulation needs an alphabet")
        fwd = alphabet.covariant | alphabet.bivariant
        bwd = alphabet.contravariant | alphabet.bivariant
        for f in alphabet.fresh:
            if f.polarity in (Polarity.COVARIANT, Polarity.BIVARIANT):
                fwd = fwd | {f.name}
            if f.polarity in (Polarity.CONTRAVARIANT, Polarity.BIVARIANT):
                bwd = bwd | {f.name}
        return _Clauses(lambda a, p, q: a in fwd, lambda a, p, q: a in bwd)
    if kind is RelationKind.PLAIN_SIM:
        return _Clauses(_always, None)
    if kind is RelationKind.INVERSE_SIM:
        return _Clauses(None, _always)
    if kind is RelationKind.BISIM:
        return _Clauses(_always, _always)
    if kind is RelationKind.CONF_SIM:
        return _Clauses(
            None,
            lambda a, p, q: a in p.initials,
            lambda p, q: p.initials <= q.initials,
            "I(lhs) is not contained in I(rhs)",
        )
    if kind is RelationKind.READY_SIM:
        return _Clauses(
            _always, None, lambda p, q: p.initials == q.initials, "initial sets differ"
        )
    if kind is RelationKind.READY_CONF_SIM:
        return _Clauses(
            None, _always, lambda p, q: p.initials == q.initials, "initial sets differ"
        )
    raise ValueError(f"{kind} is not a simulation-style relation")


class Checker:
    """Memoised decision procedure for one relation kind.

    A checker keeps its memo table across calls, which sweeps exploit; the
    module-level functions build a fresh checker per call.
    """

    def __init__(self, kind: RelationKind | str, alphabet: Optional[Alphabet] = None):
        self.kind = RelationKind(kind)
        self.alphabet = alphabet
        base = {
            RelationKind.CC_EQUIV: RelationKind.CC_SIM,
            RelationKind.CONF_PRECONG: RelationKind.CONF_SIM,
            RelationKind.CONF_EQUIV: RelationKind.CONF_SIM,
        }.get(self.kind, self.kind)
        self.base = base
        self._cl = _clauses(base, alphabet)
        self._memo: dict[tuple[Term, Term], bool] = {}

    def _validate(self, *terms: Term) -> None:
        if self.kind.needs_alphabet:
            for t in terms:
                self.alphabet.check_term(t)

    def simulates(self, p: Term, q: Term) -> bool:
        """Decide the underlying (base) simulation relation for ``(p, q)``."""
        memo = self._memo
        key = (p, q)
        r = memo.get(key)
        if r is None:
            r = self._obstruction(p, q) is None
            memo[key] = r
        return r

    def _obstruction(self, p: Term, q: Term):
        cl = self._cl
        if cl.guard is not None and not cl.guard(p, q):
            return Obstruction(p, q, cl.guard_name)
        if cl.forward is not None:
            for a, p1 in p.summands:
                if cl.forward(a, p, q) and not any(
                    b == a and self.simulates(p1, q1) for b, q1 in q.summands
                ):
                    return Obstruction(p, q, "left move not matched", "lhs", (a, p1))
        if cl.backward is not None:
            for a, q1 in q.summands:
                if cl.backward(a, p, q) and not any(
                    b == a and self.simulates(p1, q1) for b, p1 in p.summands
                ):
                    return Obstruction(p, q, "right move not matched", "rhs", (a, q1))
        return None

    def holds(self, p: Term, q: Term) -> bool:
        self._validate(p, q)
        k = self.kind
        if k is RelationKind.CONF_PRECONG:
            return p.initials >= q.initials and self.simulates(p, q)
        if k in (RelationKind.CC_EQUIV, RelationKind.CONF_EQUIV):
            return self.simulates(p, q) and self.simulates(q, p)
        return self.simulates(p, q)

    __call__ = holds

    def witness_relation(self, p: Term, q: Term) -> frozenset[tuple[Term, Term]]:
        """Pairs reachable from ``(p, q)`` through the chosen matches.

        Requires ``simulates(p, q)``.  The result contains ``(p, q)`` and is
        closed under the transfer clauses.
        """
        cl = self._cl
        rel = set()
        stack = [(p, q)]
        while stack:
            pair = stack.pop()
            if pair in rel:
                continue
            rel.add(pair)
            x, y = pair
            if cl.forward is not None:
                for a, x1 in x.summands:
                    if cl.forward(a, x, y):
                        stack.append((x1, _first_match(self, a, x1, y, left=True)))
            if cl.backward is not None:
                for a, y1 in y.summands:
                    if cl.backward(a, x, y):
                        stack.append((_first_match(self, a, y1, x, left=False), y1))
        return frozenset(rel)

    def judge(self, p: Term, q: Term) -> Judgement:
        verdict = self.holds(p, q)
        k = self.kind
        if k in (RelationKind.CC_EQUIV, RelationKind.CONF_EQUIV):
            if verdict:
                witness = (self.witness_relation(p, q), self.witness_relation(q, p))
            elif not self.simulates(p, q):
                witness = self._obstruction(p, q)
            else:
                witness = self._obstruction(q, p)
        elif k is RelationKind.CONF_PRECONG:
            if verdict:
                witness = self.witness_relation(p, q)
            elif not p.initials >= q.initials:
                witness = Obstruction(p, q, "I(lhs) does not contain I(rhs)")
            else:
                witness = self._obstruction(p, q)
        else:
            witness = self.witness_relation(p, q) if verdict else self._obstruction(p, q)
        return Judgement(k, p, q, verdict, witness)


def _first_match(chk: Checker, a: str, moved: Term, other: Term, left: bool) -> Term:
    for b, t in other.summands:
        if b != a:
            continue
        if left and chk.simulates(moved, t):
            return t
        if not left and chk.simulates(t, moved):
            return t
    raise AssertionError("witness requested for a failing pair")


def is_witness(kind: RelationKind | str, relation, alphabet: Optional[Alphabet] = None) -> bool:
    """Check that ``relation`` is closed under the transfer clauses of ``kind``.

    For composite kinds the base simulation is meant (e.g. ``conf_sim`` for
    ``conf_precong``).
    """
    kind = RelationKind(kind)
    base = {
        RelationKind.CC_EQUIV: RelationKind.CC_SIM,
        RelationKind.CONF_PRECONG: RelationKind.CONF_SIM,
        RelationKind.CONF_EQUIV: RelationKind.CONF_SIM,
    }.get(kind, kind)
    cl = _clauses(base, alphabet)
    rel = set(relation)
    for p, q in rel:
        if cl.guard is not None and not cl.guard(p, q):
            return False
        if cl.forward is not None:
            for a, p1 in p.summands:
                if cl.forward(a, p, q) and not any(
                    b == a and (p1, q1) in rel for b, q1 in q.summands
                ):
                    return False
        if cl.backward is not None:
            for a, q1 in q.summands:
                if cl.backward(a, p, q) and not any(
                    b == a and (p1, q1) in rel for b, p1 in p.summands
                ):
                    return False
    return True


def check(kind: RelationKind | str, p: Term, q: Term, alphabet: Optional[Alphabet] = None) -> Judgement:
    return Checker(kind, alphabet).judge(p, q)


def holds(kind: RelationKind | str, p: Term, q: Term, alphabet: Optional[Alphabet] = None) -> bool:
    return Checker(kind, alphabet).holds(p, q)


def cc_simulates(p: Term, q: Term, alphabet: Alphabet) -> Judgement:
    return check(RelationKind.CC_SIM, p, q, alphabet)


def cc_equiv(p: Term, q: Term, alphabet: Alphabet) -> Judgement:
    return check(RelationKind.CC_EQUIV, p, q, alphabet)


def conf_simulates(p: Term, q: Term) -> Judgement:
    return check(RelationKind.CONF_SIM, p, q)


def conf_precong(p: Term, q: Term) -> Judgement:
    return check(RelationKind.CONF_PRECONG, p, q)


def conf_equiv(p: Term, q: Term) -> Judgement:
    return check(RelationKind.CONF_EQUIV, p, q)


def plain_simulates(p: Term, q: Term) -> Judgement:
    return check(RelationKind.PLAIN_SIM, p, q)


def inverse_simulates(p: Term, q: Term) -> Judgement:
    return check(RelationKind.INVERSE_SIM, p, q)


def bisimilar(p: Term, q: Term) -> Judgement:
    return check(RelationKind.BISIM, p, q)


def ready_simulates(p: Term, q: Term) -> Judgement:
    return check(RelationKind.READY_SIM, p, q)


def ready_conf_simulates(p: Term, q: Term) -> Judgement:
    return check(RelationKind.READY_CONF_SIM, p, q)
