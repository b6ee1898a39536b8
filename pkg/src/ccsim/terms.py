"""Finite BCCSP processes kept in normal form modulo B1-B4.

A :class:`Term` is an interned, immutable set of ``(action, subterm)``
summands.  Because summands form a set, commutativity, associativity,
idempotence and the unit law for ``+`` hold by construction, and two terms
are bisimilar exactly when they are the same object.
"""

from __future__ import annotations

import enum
import weakref
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Union

__all__ = [
    "Polarity",
    "Action",
    "Alphabet",
    "AlphabetError",
    "Term",
    "NIL",
    "Nil",
    "Prefix",
    "Sum",
    "LtsStep",
    "prefix",
    "summation",
    "canonicalize",
    "transitions",
    "initials",
    "iterated_prefix",
    "prune",
    "subterms",
]


class Polarity(str, enum.Enum):
    COVARIANT = "r"
    CONTRAVARIANT = "l"
    BIVARIANT = "bi"


@dataclass(frozen=True)
class Action:
    name: str
    polarity: Polarity = Polarity.COVARIANT


class AlphabetError(ValueError):
    pass


class Alphabet:
    """A finite alphabet split into covariant, contravariant and bivariant
    actions, plus a pool of fresh actions reserved for contexts."""

    def __init__(self, actions: Iterable[Action] = (), fresh: Iterable[Action] = ()):
        self._actions: dict[str, Action] = {}
        for act in actions:
            if act.name in self._actions:
                raise AlphabetError(f"action {act.name!r} declared twice")
            self._actions[act.name] = act
        self.fresh: tuple[Action, ...] = tuple(fresh)
        seen = set()
        for act in self.fresh:
            if act.name in self._actions or act.name in seen:
                raise AlphabetError(f"fresh action {act.name!r} clashes with another action")
            seen.add(act.name)

    @classmethod
    def of(cls, r=(), l=(), bi=(), fresh=()) -> "Alphabet":
        """Build an alphabet from lists of names per polarity class."""
        acts = [Action(n, Polarity.COVARIANT) for n in _names(r)]
        acts += [Action(n, Polarity.CONTRAVARIANT) for n in _names(l)]
        acts += [Action(n, Polarity.BIVARIANT) for n in _names(bi)]
        return cls(acts, [Action(n, Polarity.COVARIANT) for n in _names(fresh)])

    @property
    def actions(self) -> tuple[Action, ...]:
        return tuple(self._actions.values())

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self._actions))

    def _with(self, pol: Polarity) -> frozenset[str]:
        return frozenset(a.name for a in self._actions.values() if a.polarity is pol)

    @property
    def covariant(self) -> frozenset[str]:
        return self._with(Polarity.COVARIANT)

    @property
    def contravariant(self) -> frozenset[str]:
        return self._with(Polarity.CONTRAVARIANT)

    @property
    def bivariant(self) -> frozenset[str]:
        return self._with(Polarity.BIVARIANT)

    def polarity(self, name: str) -> Polarity:
        act = self._actions.get(name)
        if act is None:
            for f in self.fresh:
                if f.name == name:
                    return f.polarity
            raise AlphabetError(f"action {name!r} is not in the alphabet")
        return act.polarity

    def declares(self, name: str) -> bool:
        return name in self._actions or any(f.name == name for f in self.fresh)

    def __contains__(self, name: str) -> bool:
        return name in self._actions

    def __len__(self) -> int:
        return len(self._actions)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Alphabet)
            and self._actions == other._actions
            and self.fresh == other.fresh
        )

    def __hash__(self) -> int:
        return hash((frozenset(self._actions.values()), self.fresh))

    def __repr__(self) -> str:
        return f"Alphabet({self.describe()})"

    def describe(self) -> str:
        """Render in the ``r: a, b; l: c; bi: d; fresh: f1`` block syntax."""
        parts = []
        for tag, names in (
            ("r", sorted(self.covariant)),
            ("l", sorted(self.contravariant)),
            ("bi", sorted(self.bivariant)),
            ("fresh", [f.name for f in self.fresh]),
        ):
            if names:
                parts.append(f"{tag}: {', '.join(names)}")
        return "; ".join(parts)

    def check_term(self, term: "Term") -> None:
        for name in term.actions():
            if name not in self._actions and not any(f.name == name for f in self.fresh):
                raise AlphabetError(f"action {name!r} is not in the alphabet")


def _names(names) -> list[str]:
    if isinstance(names, str):
        return [n.strip() for n in names.split(",") if n.strip()]
    return list(names)


class Term:
    """Canonical finite process: an ordered tuple of distinct summands.

    Instances are hash-consed, so ``==`` is identity and hashing is O(1).
    Summands are ordered by action name, then by subterm order.
    """

    __slots__ = ("summands", "depth", "key", "_hash", "_initials", "_set", "__weakref__")
    _table: "weakref.WeakValueDictionary[frozenset, Term]" = weakref.WeakValueDictionary()

    summands: tuple[tuple[str, "Term"], ...]
    depth: int
    key: tuple

    def __new__(cls, summands: Iterable[tuple[str, "Term"]] = ()):
        fs = summands if type(summands) is frozenset else frozenset(summands)
        found = cls._table.get(fs)
        if found is not None:
            return found
        items = tuple(sorted(fs, key=_summand_key))
        self = object.__new__(cls)
        self.summands = items
        self._set = fs
        self.depth = 1 + max(c.depth for _, c in items) if items else 0
        self.key = tuple((a, c.key) for a, c in items)
        self._hash = hash(self.key)
        self._initials = None
        cls._table[fs] = self
        return self

    def __reduce__(self):
        return (Term, (self.summands,))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other

    def __lt__(self, other: "Term") -> bool:
        return self.key < other.key

    def __le__(self, other: "Term") -> bool:
        return self.key <= other.key

    def __add__(self, other: "Term") -> "Term":
        if not other.summands:
            return self
        if not self.summands:
            return other
        return Term(self._set | other._set)

    def __bool__(self) -> bool:
        return bool(self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self) -> Iterator[tuple[str, "Term"]]:
        return iter(self.summands)

    def __repr__(self) -> str:
        from .syntax import format_term

        return f"Term({format_term(self)!r})"

    def __str__(self) -> str:
        from .syntax import format_term

        return format_term(self)

    @property
    def initials(self) -> frozenset[str]:
        if self._initials is None:
            self._initials = frozenset(a for a, _ in self.summands)
        return self._initials

    def actions(self) -> set[str]:
        out: set[str] = set()
        stack = [self]
        while stack:
            t = stack.pop()
            for a, c in t.summands:
                out.add(a)
                stack.append(c)
        return out

    def size(self) -> int:
        return 1 + sum(c.size() for _, c in self.summands)

    def without(self, summand: tuple[str, "Term"]) -> "Term":
        return Term(s for s in self.summands if s != summand)

    def restrict(self, names: Iterable[str]) -> "Term":
        keep = set(names)
        return Term(s for s in self.summands if s[0] in keep)


def _summand_key(s: tuple[str, Term]) -> tuple:
    return (s[0], s[1].key)


NIL = Term()


def prefix(action: str, body: Term = NIL) -> Term:
    return Term(frozenset(((action, body),)))


def summation(terms: Iterable[Term]) -> Term:
    return Term(frozenset().union(*(t._set for t in terms)))


# Raw (not yet normalised) syntax trees, as produced by the parser.


@dataclass(frozen=True)
class Nil:
    pass


@dataclass(frozen=True)
class Prefix:
    action: str
    body: "Raw"


@dataclass(frozen=True)
class Sum:
    left: "Raw"
    right: "Raw"


Raw = Union[Nil, Prefix, Sum, Term]


def canonicalize(raw: Raw) -> Term:
    """Normalise a raw tree modulo B1-B4. Idempotent on :class:`Term`."""
    if isinstance(raw, Term):
        return raw
    if isinstance(raw, Nil):
        return NIL
    if isinstance(raw, Prefix):
        return prefix(raw.action, canonicalize(raw.body))
    if isinstance(raw, Sum):
        # iterative over left spines so long sums do not recurse deeply
        parts = []
        stack = [raw]
        while stack:
            node = stack.pop()
            if isinstance(node, Sum):
                stack.append(node.right)
                stack.append(node.left)
            else:
                parts.append(canonicalize(node))
        return summation(parts)
    raise TypeError(f"not a process tree: {raw!r}")


class LtsStep(NamedTuple):
    label: str
    target: Term


def transitions(p: Term) -> list[LtsStep]:
    return [LtsStep(a, c) for a, c in p.summands]


def initials(p: Term) -> frozenset[str]:
    return p.initials


def iterated_prefix(action: str, n: int, p: Term = NIL) -> Term:
    if n < 0:
        raise ValueError("n must be nonnegative")
    for _ in range(n):
        p = prefix(action, p)
    return p


def prune(p: Term, m: int) -> Term:
    """Cut ``p`` at depth ``m``: every summand below depth ``m`` is dropped."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return NIL
    if p.depth <= m:
        return p
    return Term((a, prune(c, m - 1)) for a, c in p.summands)


def subterms(p: Term) -> set[Term]:
    out = {p}
    stack = [p]
    while stack:
        t = stack.pop()
        for _, c in t.summands:
            if c not in out:
                out.add(c)
                stack.append(c)
    return out
