"""Axiom schemata over open process patterns, with matching modulo B1-B4.

A pattern is an open term: term variables (``$x``) may stand for any
process, and inside a sum they capture an arbitrary subset of the summands.
Action slots are either concrete names or generic action variables
restricted to a polarity class (``%a:r``, ``%a:l`` or ``%a:any``).  Because
``+`` is idempotent, the parts of a sum pattern may overlap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterator, Optional, Union

from .semantics import RelationKind
from .terms import NIL, Alphabet, Polarity, Term, prefix, summation

__all__ = [
    "PVar",
    "PNil",
    "ActVar",
    "PPrefix",
    "PSum",
    "Pattern",
    "SideCondition",
    "AxiomSchema",
    "AxiomSet",
    "InvalidSubstitution",
    "Substitution",
    "match",
    "match_at",
    "apply",
    "instantiate",
    "positions",
    "subterm_at",
    "replace_at",
    "parse_pattern",
    "parse_axiom_file",
    "load_axiom_set",
    "PatternSyntaxError",
    "SCHEMAS",
    "A_CC_PRE",
    "A_CS",
    "A_CC_EQ",
    "A_CS_EQ",
    "AXIOM_SETS",
]


class InvalidSubstitution(ValueError):
    pass


@dataclass(frozen=True)
class PVar:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class PNil:
    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class ActVar:
    name: str
    polarity: str = "any"  # "r", "l" or "any"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class PPrefix:
    action: Union[str, ActVar]
    body: "Pattern"

    def __str__(self) -> str:
        b = str(self.body)
        if isinstance(self.body, PSum):
            b = f"({b})"
        return f"{self.action}.{b}"


@dataclass(frozen=True)
class PSum:
    parts: tuple

    def __str__(self) -> str:
        return " + ".join(str(p) for p in self.parts)


Pattern = Union[PVar, PNil, PPrefix, PSum]
Substitution = dict  # term variable -> Term, action variable -> action name


def psum(*parts: Pattern) -> Pattern:
    flat: list[Pattern] = []
    for p in parts:
        if isinstance(p, PSum):
            flat.extend(p.parts)
        elif not isinstance(p, PNil):
            flat.append(p)
    if not flat:
        return PNil()
    if len(flat) == 1:
        return flat[0]
    return PSum(tuple(flat))


def term_vars(p: Pattern) -> set[str]:
    if isinstance(p, PVar):
        return {p.name}
    if isinstance(p, PPrefix):
        return term_vars(p.body)
    if isinstance(p, PSum):
        out: set[str] = set()
        for q in p.parts:
            out |= term_vars(q)
        return out
    return set()


def action_vars(p: Pattern) -> set[str]:
    if isinstance(p, PPrefix):
        here = {p.action.name} if isinstance(p.action, ActVar) else set()
        return here | action_vars(p.body)
    if isinstance(p, PSum):
        out: set[str] = set()
        for q in p.parts:
            out |= action_vars(q)
        return out
    return set()


def action_slots(p: Pattern) -> dict[str, ActVar]:
    if isinstance(p, PPrefix):
        here = {p.action.name: p.action} if isinstance(p.action, ActVar) else {}
        return {**here, **action_slots(p.body)}
    if isinstance(p, PSum):
        out: dict[str, ActVar] = {}
        for q in p.parts:
            out.update(action_slots(q))
        return out
    return {}


# --- matching ---------------------------------------------------------------


def _action_fits(slot: ActVar, name: str, alphabet: Optional[Alphabet]) -> bool:
    if slot.polarity == "any":
        return True
    if alphabet is None:
        return False
    try:
        pol = alphabet.polarity(name)
    except ValueError:
        return False
    if slot.polarity == "r":
        return pol is Polarity.COVARIANT
    return pol is Polarity.CONTRAVARIANT


def _match_action(slot, name: str, sigma: Substitution, alphabet) -> Optional[Substitution]:
    if isinstance(slot, str):
        return sigma if slot == name else None
    bound = sigma.get(slot.name)
    if bound is not None:
        return sigma if bound == name else None
    if not _action_fits(slot, name, alphabet):
        return None
    out = dict(sigma)
    out[slot.name] = name
    return out


def match(pat: Pattern, term: Term, sigma: Substitution, alphabet: Optional[Alphabet]) -> Iterator[Substitution]:
    """All extensions of ``sigma`` under which ``pat`` equals ``term`` modulo B1-B4."""
    if isinstance(pat, PNil):
        if term is NIL:
            yield sigma
    elif isinstance(pat, PVar):
        bound = sigma.get(pat.name)
        if bound is None:
            out = dict(sigma)
            out[pat.name] = term
            yield out
        elif bound is term:
            yield sigma
    elif isinstance(pat, PPrefix):
        if len(term.summands) == 1:
            a, c = term.summands[0]
            s1 = _match_action(pat.action, a, sigma, alphabet)
            if s1 is not None:
                yield from match(pat.body, c, s1, alphabet)
    elif isinstance(pat, PSum):
        yield from _match_sum(pat, term, sigma, alphabet)
    else:
        raise TypeError(f"not a pattern: {pat!r}")


def _match_sum(pat: PSum, term: Term, sigma, alphabet) -> Iterator[Substitution]:
    prefixes = [p for p in pat.parts if isinstance(p, PPrefix)]
    var_names: list[str] = []
    for p in pat.parts:
        if isinstance(p, PVar) and p.name not in var_names:
            var_names.append(p.name)
        elif isinstance(p, PSum):  # pragma: no cover - psum flattens
            raise TypeError("nested sum pattern")
    summands = term.summands
    single = [Term((s,)) for s in summands]

    def place(k: int, sig, covered: frozenset) -> Iterator[tuple]:
        if k == len(prefixes):
            yield sig, covered
            return
        for idx, s in enumerate(single):
            for s2 in match(prefixes[k], s, sig, alphabet):
                yield from place(k + 1, s2, covered | {idx})

    all_idx = frozenset(range(len(summands)))
    for sig, covered in place(0, sigma, frozenset()):
        free = []
        ok = True
        for v in var_names:
            bound = sig.get(v)
            if bound is None:
                free.append(v)
                continue
            idxs = _indices_of(bound, summands)
            if idxs is None:
                ok = False
                break
            covered = covered | idxs
        if not ok:
            continue
        rest = all_idx - covered
        if not free:
            if not rest:
                yield sig
            continue
        # every leftover summand goes to at least one free variable, covered
        # ones to any subset of them
        nf = len(free)
        options = []
        for idx in range(len(summands)):
            masks = range(1, 1 << nf) if idx in rest else range(0, 1 << nf)
            options.append(masks)
        for choice in product(*options):
            out = dict(sig)
            for vi, v in enumerate(free):
                out[v] = Term(summands[idx] for idx, m in enumerate(choice) if m >> vi & 1)
            yield out


def _indices_of(t: Term, summands) -> Optional[frozenset]:
    pos = {s: i for i, s in enumerate(summands)}
    out = set()
    for s in t.summands:
        i = pos.get(s)
        if i is None:
            return None
        out.add(i)
    return frozenset(out)


def instantiate(pat: Pattern, sigma: Substitution) -> Term:
    if isinstance(pat, PNil):
        return NIL
    if isinstance(pat, PVar):
        try:
            return sigma[pat.name]
        except KeyError:
            raise InvalidSubstitution(f"variable {pat.name} is unbound") from None
    if isinstance(pat, PPrefix):
        a = pat.action
        if isinstance(a, ActVar):
            try:
                a = sigma[a.name]
            except KeyError:
                raise InvalidSubstitution(f"action variable {pat.action.name} is unbound") from None
        return prefix(a, instantiate(pat.body, sigma))
    if isinstance(pat, PSum):
        return summation(instantiate(p, sigma) for p in pat.parts)
    raise TypeError(f"not a pattern: {pat!r}")


def _compile(pat: Pattern):
    """A closure instantiating ``pat``; assumes ``sigma`` closes it."""
    if isinstance(pat, PNil):
        return lambda sigma: NIL
    if isinstance(pat, PVar):
        name = pat.name
        return lambda sigma: sigma[name]
    if isinstance(pat, PPrefix):
        body = _compile(pat.body)
        a = pat.action
        if isinstance(a, ActVar):
            an = a.name
            return lambda sigma: Term(((sigma[an], body(sigma)),))
        return lambda sigma: Term(((a, body(sigma)),))
    if isinstance(pat, PSum):
        parts = [_compile(p) for p in pat.parts]
        return lambda sigma: summation(f(sigma) for f in parts)
    raise TypeError(f"not a pattern: {pat!r}")


# --- side conditions, schemata ----------------------------------------------


@dataclass(frozen=True)
class SideCondition:
    """``disjoint(p, q)``: I(p) and I(q) are disjoint;
    ``subset(q, p)``: I(q) is contained in I(p);
    ``within(y, r|l)``: I(y) only holds actions of that polarity."""

    kind: str
    args: tuple

    def variables(self) -> set[str]:
        if self.kind == "within":
            return {self.args[0]}
        return set(self.args)

    def holds(self, sigma: Substitution, alphabet: Optional[Alphabet] = None) -> bool:
        if self.kind == "disjoint":
            p, q = (sigma[v] for v in self.args)
            return not (p.initials & q.initials)
        if self.kind == "subset":
            q, p = (sigma[v] for v in self.args)
            return q.initials <= p.initials
        if self.kind == "within":
            y = sigma[self.args[0]]
            want = Polarity.COVARIANT if self.args[1] == "r" else Polarity.CONTRAVARIANT
            if alphabet is None:
                raise InvalidSubstitution("polarity condition needs an alphabet")
            return all(alphabet.polarity(a) is want for a in y.initials)
        raise ValueError(f"unknown side condition {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "disjoint":
            return f"I({self.args[0]}) ∩ I({self.args[1]}) = ∅"
        if self.kind == "subset":
            return f"I({self.args[0]}) ⊆ I({self.args[1]})"
        return f"I({self.args[0]}) ⊆ A^{self.args[1]}"


@dataclass(frozen=True)
class AxiomSchema:
    name: str
    lhs: Pattern
    rhs: Pattern
    kind: str = "le"  # "le" for inequations, "eq" for equations
    condition: Optional[SideCondition] = None

    def __post_init__(self):
        put = object.__setattr__
        put(self, "_vars", frozenset(term_vars(self.lhs) | term_vars(self.rhs)))
        put(self, "_avars", {**action_slots(self.lhs), **action_slots(self.rhs)})
        put(self, "_fns", (_compile(self.lhs), _compile(self.rhs)))

    def sides(self, direction: str) -> tuple[Pattern, Pattern]:
        if direction == "lr":
            return self.lhs, self.rhs
        if direction == "rl":
            return self.rhs, self.lhs
        raise ValueError(f"direction must be 'lr' or 'rl', got {direction!r}")

    def variables(self) -> frozenset[str]:
        return self._vars

    def action_variables(self) -> dict[str, ActVar]:
        return self._avars

    def condition_holds(self, sigma: Substitution, alphabet: Optional[Alphabet]) -> bool:
        if self.condition is None:
            return True
        return self.condition.holds(sigma, alphabet)

    def check_substitution(self, sigma: Substitution, alphabet: Optional[Alphabet]) -> None:
        """Raise :class:`InvalidSubstitution` unless ``sigma`` closes the schema
        and satisfies its polarity constraints and side condition."""
        for v in self._vars:
            if not isinstance(sigma.get(v), Term):
                raise InvalidSubstitution(f"{self.name}: variable {v} is unbound")
        for v, slot in self._avars.items():
            a = sigma.get(v)
            if not isinstance(a, str):
                raise InvalidSubstitution(f"{self.name}: action variable {v} is unbound")
            if alphabet is not None and not alphabet.declares(a):
                raise InvalidSubstitution(f"{self.name}: action {a!r} is not in the alphabet")
            if not _action_fits(slot, a, alphabet):
                raise InvalidSubstitution(f"{self.name}: action {a!r} does not fit slot {v}")
        if not self.condition_holds(sigma, alphabet):
            raise InvalidSubstitution(f"{self.name}: side condition {self.condition} fails")

    def instance(
        self,
        sigma: Substitution,
        alphabet: Optional[Alphabet] = None,
        direction: str = "lr",
        check: bool = True,
    ) -> tuple[Term, Term]:
        if check:
            self.check_substitution(sigma, alphabet)
        lf, rf = self._fns
        if direction == "lr":
            return lf(sigma), rf(sigma)
        if direction == "rl":
            return rf(sigma), lf(sigma)
        raise ValueError(f"direction must be 'lr' or 'rl', got {direction!r}")

    def __str__(self) -> str:
        rel = "<=" if self.kind == "le" else "="
        body = f"{self.lhs} {rel} {self.rhs}"
        if self.condition is not None:
            body = f"{self.condition} => {body}"
        return f"({self.name}) {body}"


@dataclass(frozen=True)
class AxiomSet:
    name: str
    schemata: tuple
    target: RelationKind
    kind: str = "le"

    def __getitem__(self, name: str) -> AxiomSchema:
        for s in self.schemata:
            if s.name == name:
                return s
        raise KeyError(f"{name!r} is not in axiom set {self.name}")

    def __contains__(self, name: str) -> bool:
        return any(s.name == name for s in self.schemata)

    def __iter__(self):
        return iter(self.schemata)


# --- positions --------------------------------------------------------------


def positions(term: Term) -> list[tuple[int, ...]]:
    """Every node position: ``()`` is the root, ``(i, ...)`` descends into the
    child of summand ``i`` in canonical order."""
    out = [()]
    for i, (_, c) in enumerate(term.summands):
        out.extend((i,) + p for p in positions(c))
    return out


def subterm_at(term: Term, position) -> Term:
    for i in position:
        try:
            term = term.summands[i][1]
        except IndexError:
            raise InvalidSubstitution(f"position {tuple(position)} is not valid") from None
    return term


def replace_at(term: Term, position, new: Term) -> Term:
    if not position:
        return new
    i = position[0]
    try:
        a, c = term.summands[i]
    except IndexError:
        raise InvalidSubstitution(f"position {tuple(position)} is not valid") from None
    rest = [s for k, s in enumerate(term.summands) if k != i]
    rest.append((a, replace_at(c, position[1:], new)))
    return Term(rest)


def match_at(
    schema: AxiomSchema,
    term: Term,
    position=(),
    alphabet: Optional[Alphabet] = None,
    direction: str = "lr",
) -> list[Substitution]:
    """Substitutions under which the source side of ``schema`` equals the
    subterm at ``position``.

    The side condition is enforced when the source side binds all of its
    variables; otherwise it is left to :func:`apply`.
    """
    node = subterm_at(term, position)
    src, _ = schema.sides(direction)
    out = []
    cond_vars = schema.condition.variables() if schema.condition else set()
    for sigma in match(src, node, {}, alphabet):
        if cond_vars and cond_vars <= set(sigma):
            if not schema.condition.holds(sigma, alphabet):
                continue
        out.append(sigma)
    return out


def apply(
    schema: AxiomSchema,
    term: Term,
    position,
    sigma: Substitution,
    direction: str = "lr",
    alphabet: Optional[Alphabet] = None,
    context: Term = NIL,
) -> Term:
    """Rewrite the node at ``position`` with one instance of ``schema``.

    The node must equal the source instance plus ``context`` (a sum context
    that is carried over unchanged).  Inequations only rewrite left to right.
    """
    if schema.kind == "le" and direction != "lr":
        raise InvalidSubstitution(f"{schema.name} is an inequation; it only applies left to right")
    src, tgt = schema.instance(sigma, alphabet, direction)
    node = subterm_at(term, position)
    if src + context is not node:
        raise InvalidSubstitution(f"{schema.name} does not match at position {tuple(position)}")
    return replace_at(term, position, tgt + context)


# --- bundled schemata --------------------------------------------------------

x, y, z, p, q = PVar("x"), PVar("y"), PVar("z"), PVar("p"), PVar("q")
ar, br = ActVar("a_r", "r"), ActVar("b_r", "r")
al, bl = ActVar("a_l", "l"), ActVar("b_l", "l")
a_any = ActVar("a", "any")


def _pre(a, body):
    return PPrefix(a, body)


_B = (
    AxiomSchema("B1", psum(x, y), psum(y, x), "eq"),
    AxiomSchema("B2", psum(x, y, z), psum(x, y, z), "eq"),
    AxiomSchema("B3", psum(x, x), x, "eq"),
    AxiomSchema("B4", psum(x, PNil()), x, "eq"),
)

SCHEMAS: dict[str, AxiomSchema] = {s.name: s for s in _B}
SCHEMAS.update(
    {
        s.name: s
        for s in (
            AxiomSchema("S", x, psum(x, y)),
            AxiomSchema("S_inv", psum(x, y), x),
            AxiomSchema("S_r", x, psum(x, y), condition=SideCondition("within", ("y", "r"))),
            AxiomSchema("S_inv_l", psum(x, y), x, condition=SideCondition("within", ("y", "l"))),
            AxiomSchema("S_r_p", x, psum(x, _pre(ar, y))),
            AxiomSchema("S_l_p", psum(x, _pre(al, y)), x),
            AxiomSchema("S_CS", p, psum(p, q), condition=SideCondition("disjoint", ("p", "q"))),
            AxiomSchema("S_inv_CS", psum(p, q), p, condition=SideCondition("subset", ("q", "p"))),
            AxiomSchema(
                "S_CS_g",
                _pre(a_any, p),
                _pre(a_any, psum(p, q)),
                condition=SideCondition("disjoint", ("p", "q")),
            ),
            AxiomSchema("S_inv_CS_p", psum(_pre(a_any, p), _pre(a_any, q)), _pre(a_any, p)),
            AxiomSchema(
                "S1_eq",
                _pre(ar, psum(x, _pre(br, y))),
                psum(_pre(ar, psum(x, _pre(br, y))), _pre(ar, x)),
                "eq",
            ),
            AxiomSchema(
                "S2_eq",
                _pre(ar, x),
                psum(_pre(ar, x), _pre(ar, psum(x, _pre(bl, y)))),
                "eq",
            ),
            AxiomSchema(
                "S3_eq",
                _pre(al, x),
                psum(_pre(al, x), _pre(al, psum(x, _pre(br, y)))),
                "eq",
            ),
            AxiomSchema(
                "S4_eq",
                _pre(al, psum(x, _pre(bl, y))),
                psum(_pre(al, psum(x, _pre(bl, y))), _pre(al, x)),
                "eq",
            ),
            AxiomSchema(
                "S_CS_eq",
                _pre(a_any, p),
                psum(_pre(a_any, p), _pre(a_any, psum(p, q))),
                "eq",
                SideCondition("disjoint", ("p", "q")),
            ),
            AxiomSchema(
                "S_inv_CS_eq",
                _pre(a_any, psum(p, q)),
                psum(_pre(a_any, psum(p, q)), _pre(a_any, p)),
                "eq",
                SideCondition("subset", ("q", "p")),
            ),
        )
    }
)


def _set(name, names, target, kind):
    return AxiomSet(name, tuple(SCHEMAS[n] for n in names), target, kind)


_BN = ("B1", "B2", "B3", "B4")
A_CC_PRE = _set("A_CC_pre", _BN + ("S_r_p", "S_l_p"), RelationKind.CC_SIM, "le")
A_CS = _set("A_CS", _BN + ("S_CS_g", "S_inv_CS_p"), RelationKind.CONF_PRECONG, "le")
A_CC_EQ = _set("A_CC_eq", _BN + ("S1_eq", "S2_eq", "S3_eq", "S4_eq"), RelationKind.CC_EQUIV, "eq")
A_CS_EQ = _set("A_CS_eq", _BN + ("S_CS_eq", "S_inv_CS_eq"), RelationKind.CONF_EQUIV, "eq")

AXIOM_SETS: dict[str, AxiomSet] = {s.name: s for s in (A_CC_PRE, A_CS, A_CC_EQ, A_CS_EQ)}


# --- textual patterns and axiom files ---------------------------------------

_PTOK = re.compile(
    r"\s*(?:(?P<var>\$[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<avar>%[A-Za-z_][A-Za-z0-9_]*(?::(?:r|l|any))?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<zero>0)|(?P<op>[.+()]))"
)


class PatternSyntaxError(ValueError):
    pass


def parse_pattern(text: str) -> Pattern:
    """Parse ``$x + %a:r.($y + b.0)`` style patterns."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _PTOK.match(text, pos)
        if m is None or m.end() == pos:
            raise PatternSyntaxError(f"bad pattern near {text[pos:]!r}")
        toks.append((m.lastgroup, m.group(m.lastgroup)))
        pos = m.end()
    toks.append(("end", ""))
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        i += 1
        return toks[i - 1]

    def sum_():
        parts = [atom()]
        while peek()[1] == "+":
            take()
            parts.append(atom())
        return psum(*parts)

    def atom():
        kind, val = take()
        if kind == "zero":
            return PNil()
        if kind == "var":
            return PVar(val[1:])
        if val == "(":
            node = sum_()
            if take()[1] != ")":
                raise PatternSyntaxError("missing ')'")
            return node
        if kind in ("ident", "avar"):
            if kind == "avar":
                name, _, pol = val[1:].partition(":")
                act = ActVar(name, pol or "any")
            else:
                act = val
            if peek()[1] == ".":
                take()
                return PPrefix(act, atom())
            if peek()[1] == "(":
                return PPrefix(act, atom())
            return PPrefix(act, PNil())
        raise PatternSyntaxError(f"unexpected {val or 'end of pattern'!r}")

    node = sum_()
    if peek()[0] != "end":
        raise PatternSyntaxError(f"trailing input {peek()[1]!r}")
    return node


_COND = re.compile(r"(?P<kind>disjoint|subset|within)\s*\(\s*(?P<a>[$\w]+)\s*,\s*(?P<b>[$\w]+)\s*\)")
_RULE = re.compile(r"(?P<name>[A-Za-z_][\w]*)\s*:\s*(?P<body>.+)")


def parse_axiom_file(text: str, name: str = "custom") -> AxiomSet:
    """Read an axiom set.

    Format::

        target: cc_sim
        S_bad: $x <= $x + %a:l.$y
        S_g:   %a.$p <= %a.($p + $q) when disjoint($p, $q)
        B:     bundled B1 B2 B3 B4
    """
    target = None
    schemata: list[AxiomSchema] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("target"):
            target = RelationKind(line.split(":", 1)[1].strip())
            continue
        m = _RULE.fullmatch(line)
        if m is None:
            raise PatternSyntaxError(f"line {lineno}: expected 'NAME: lhs <= rhs'")
        body = m.group("body").strip()
        if body.startswith("bundled"):
            for n in body.split()[1:]:
                if n not in SCHEMAS:
                    raise PatternSyntaxError(f"line {lineno}: unknown bundled schema {n!r}")
                schemata.append(SCHEMAS[n])
            continue
        cond = None
        if " when " in body:
            body, ctext = body.split(" when ", 1)
            c = _COND.fullmatch(ctext.strip())
            if c is None:
                raise PatternSyntaxError(f"line {lineno}: bad side condition {ctext.strip()!r}")
            args = (c.group("a").lstrip("$"), c.group("b").lstrip("$"))
            cond = SideCondition(c.group("kind"), args)
        if "<=" in body:
            lhs, rhs = body.split("<=", 1)
            kind = "le"
        elif "=" in body:
            lhs, rhs = body.split("=", 1)
            kind = "eq"
        else:
            raise PatternSyntaxError(f"line {lineno}: missing '<=' or '='")
        try:
            schemata.append(AxiomSchema(m.group("name"), parse_pattern(lhs), parse_pattern(rhs), kind, cond))
        except PatternSyntaxError as exc:
            raise PatternSyntaxError(f"line {lineno}: {exc}") from None
    if target is None:
        raise PatternSyntaxError("axiom file needs a 'target: <relation>' line")
    if not schemata:
        raise PatternSyntaxError("axiom file declares no schemata")
    kind = "eq" if target in (RelationKind.CC_EQUIV, RelationKind.CONF_EQUIV, RelationKind.BISIM) else "le"
    return AxiomSet(name, tuple(schemata), target, kind)


def load_axiom_set(source: str) -> AxiomSet:
    """A bundled set by name, or an axiom file path."""
    if source in AXIOM_SETS:
        return AXIOM_SETS[source]
    path = Path(source)
    if not path.exists():
        raise FileNotFoundError(f"no bundled axiom set or file named {source!r}")
    return parse_axiom_file(path.read_text(encoding="utf-8"), path.stem)
