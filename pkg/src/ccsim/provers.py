"""Proof construction for the four bundled axiom sets.

Each prover is a memoised recursion that either builds a proof or fails
(returns ``None``); it never asks a semantic decision procedure whether the
claim holds.  Sub-proofs for subterm pairs are shared between calls on the
same prover object, which is what makes exhaustive sweeps affordable.  The
result of a top-level call is not memoised, so a sweep only keeps proofs for
pairs that occur below the root.

Equational proofs are built from "absorption" equations ``a.U = a.U + a.W``.
Two absorptions ``a.U = a.U + a.W`` and ``a.W = a.W + a.X`` compose to
``a.U = a.U + a.X`` (see :func:`absorb_trans`).
"""

from __future__ import annotations

from typing import Optional, Sequence

from .axioms import A_CC_EQ, A_CC_PRE, A_CS, A_CS_EQ, SCHEMAS
from .proofs import Proof, Step, axiom, plus, prefix, refl, sym, trans
from .terms import NIL, Alphabet, AlphabetError, Polarity, Term
from .terms import prefix as mk

__all__ = [
    "BivariantAlphabetError",
    "CCPreorderProver",
    "ConfPrecongProver",
    "CCEquivProver",
    "ConfEquivProver",
    "prove_cc_preorder",
    "prove_conf_precong",
    "prove_cc_equiv",
    "prove_conf_equiv",
    "expand_derived_axiom",
    "absorb_trans",
    "prover_for",
]


class BivariantAlphabetError(AlphabetError):
    """Equational completeness for cc-equivalence needs an alphabet without
    bivariant actions; with them no finite axiomatisation exists."""


def _polarities(alphabet: Alphabet) -> dict[str, Polarity]:
    out = {a.name: a.polarity for a in alphabet.actions}
    for a in alphabet.fresh:
        out[a.name] = a.polarity
    return out


def _pol(pols: dict, name: str) -> Polarity:
    try:
        return pols[name]
    except KeyError:
        raise AlphabetError(f"action {name!r} is not declared in the alphabet") from None


def _split(t: Term, pols: dict) -> tuple[list, list, list]:
    r, l, b = [], [], []
    for s in t.summands:
        p = _pol(pols, s[0])
        (r if p is Polarity.COVARIANT else l if p is Polarity.CONTRAVARIANT else b).append(s)
    return r, l, b


def absorb_trans(e1: Step, e2: Step, ax: Term) -> Step:
    """From ``aU = aU + aW`` and ``aW = aW + aX`` derive ``aU = aU + aX``."""
    au = e1.lhs
    if e2.trivial:
        return e1
    if e1.trivial:
        return e2
    target = au + ax
    if target is au:
        return refl(au)
    return trans(e1, plus(refl(au), e2), sym(plus(e1, refl(ax))))


def _absorb_chain(start: Term, items: Sequence[tuple[Step, Term]]) -> Step:
    """``T = T + sum(added)`` from per-summand absorptions ``bU = bU + bV``
    whose heads ``bU`` are summands of ``T``."""
    steps = []
    cur = start
    for ab, added in items:
        if ab.trivial or (cur + added) is cur:
            continue
        st = ab if ab.lhs is cur else plus(ab, refl(cur))
        steps.append(st)
        cur = st.rhs
    if not steps:
        return refl(start)
    return trans(*steps)


# --- covariant-contravariant preorder ---------------------------------------


class CCPreorderProver:
    """Proofs of ``p <= q`` over A_CC_pre, following the structural induction:
    covariant summands are matched forward and topped up with S_r_p,
    contravariant ones are matched backward after trimming with S_l_p, and
    bivariant ones are matched both ways."""

    axiom_set = A_CC_PRE

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.pols = _polarities(alphabet)
        self.memo: dict = {}
        self._sr = SCHEMAS["S_r_p"]
        self._sl = SCHEMAS["S_l_p"]

    def sub(self, p: Term, q: Term) -> Optional[Step]:
        key = (p, q)
        memo = self.memo
        if key in memo:
            return memo[key]
        s = self.build(p, q)
        memo[key] = s
        return s

    def _fwd(self, a, p1, q_summands) -> Optional[tuple]:
        for b, q1 in q_summands:
            if b == a:
                s = self.sub(p1, q1)
                if s is not None:
                    return (b, q1), s
        return None

    def _bwd(self, a, q1, p_summands) -> Optional[tuple]:
        for b, p1 in p_summands:
            if b == a:
                s = self.sub(p1, q1)
                if s is not None:
                    return (b, p1), s
        return None

    def build(self, p: Term, q: Term) -> Optional[Step]:
        if p is q:
            return refl(p)
        pr, pl, pb = _split(p, self.pols)
        qr, ql, qb = _split(q, self.pols)
        parts = []
        # covariant: p_r <= matched part of q_r, then add the rest with S_r_p
        if pr or qr:
            prem = []
            used = set()
            for a, p1 in pr:
                m = self._fwd(a, p1, qr)
                if m is None:
                    return None
                used.add(m[0])
                prem.append(prefix(a, m[1]))
            chain = [plus(*prem)] if prem else []
            cur = Term(used)
            for s in qr:
                if s in used:
                    continue
                st = axiom(self._sr, {"x": cur, "a_r": s[0], "y": s[1]}, alphabet=self.alphabet, check=False)
                chain.append(st)
                cur = st.rhs
            parts.append(trans(*chain) if chain else refl(NIL))
        # contravariant: drop unused p_l summands with S_l_p, then match q_l
        if pl or ql:
            prem = []
            used = set()
            for a, q1 in ql:
                m = self._bwd(a, q1, pl)
                if m is None:
                    return None
                used.add(m[0])
                prem.append(prefix(a, m[1]))
            chain = []
            cur = Term(pl)
            for s in pl:
                if s in used:
                    continue
                rest = cur.without(s)
                st = axiom(self._sl, {"x": rest, "a_l": s[0], "y": s[1]}, alphabet=self.alphabet, check=False)
                chain.append(st)
                cur = rest
            if prem:
                chain.append(plus(*prem))
            parts.append(trans(*chain) if chain else refl(NIL))
        # bivariant: two-way correspondence
        if pb or qb:
            prem = []
            for a, p1 in pb:
                m = self._fwd(a, p1, qb)
                if m is None:
                    return None
                prem.append(prefix(a, m[1]))
            for a, q1 in qb:
                m = self._bwd(a, q1, pb)
                if m is None:
                    return None
                prem.append(prefix(a, m[1]))
            parts.append(plus(*prem))
        if not parts:
            return refl(NIL)
        return plus(*parts)

    def prove(self, p: Term, q: Term) -> Optional[Proof]:
        self.alphabet.check_term(p)
        self.alphabet.check_term(q)
        s = self.build(p, q)
        if s is None:
            return None
        return Proof(p, q, self.axiom_set, s, self.alphabet)


# --- conformance precongruence ----------------------------------------------


class ConfPrecongProver:
    """Proofs of ``p <= q`` over A_CS by the double induction on the claim
    forms ``p <= q`` (equal initials) and ``a.p <= a.q`` (contained initials)."""

    axiom_set = A_CS

    def __init__(self, alphabet: Optional[Alphabet] = None):
        self.alphabet = alphabet
        self.memo_pre: dict = {}
        self.memo_pref: dict = {}
        self._g = SCHEMAS["S_CS_g"]
        self._inv = SCHEMAS["S_inv_CS_p"]

    def pre(self, p: Term, q: Term) -> Optional[Step]:
        key = (p, q)
        memo = self.memo_pre
        if key in memo:
            return memo[key]
        s = self.build_pre(p, q)
        memo[key] = s
        return s

    def pref(self, a: str, p: Term, q: Term) -> Optional[Step]:
        key = (a, p, q)
        memo = self.memo_pref
        if key in memo:
            return memo[key]
        s = self.build_pref(a, p, q)
        memo[key] = s
        return s

    def build_pref(self, a: str, p: Term, q: Term) -> Optional[Step]:
        """``a.p <= a.q`` when the initials of ``p`` are contained in those
        of ``q``: split ``q = q' + r`` and close with S_CS_g."""
        ip = p.initials
        if not ip <= q.initials:
            return None
        if ip == q.initials:
            s = self.pre(p, q)
            return None if s is None else prefix(a, s)
        q1 = q.restrict(ip)
        r = Term(s for s in q.summands if s[0] not in ip)
        s = self.pre(p, q1)
        if s is None:
            return None
        g = axiom(self._g, {"a": a, "p": q1, "q": r}, alphabet=self.alphabet, check=False)
        return trans(prefix(a, s), g)

    def build_pre(self, p: Term, q: Term) -> Optional[Step]:
        if p is q:
            return refl(p)
        if p.initials != q.initials:
            return None
        prem = []
        used = set()
        for a, q1 in q.summands:
            for b, p1 in p.summands:
                if b != a:
                    continue
                s = self.pref(a, p1, q1)
                if s is not None:
                    used.add((b, p1))
                    prem.append(s)
                    break
            else:
                return None
        chain = []
        cur = p
        for s in p.summands:
            if s in used:
                continue
            # keep a used summand with the same action as the anchor
            keep = next(u for u in cur.summands if u[0] == s[0] and u in used)
            rest = cur.without(s)
            ctx = rest.without(keep)
            st = axiom(self._inv, {"a": s[0], "p": keep[1], "q": s[1]}, context=ctx, alphabet=self.alphabet, check=False)
            chain.append(st)
            cur = rest
        chain.append(plus(*prem))
        return trans(*chain)

    build = build_pre

    def prove(self, p: Term, q: Term) -> Optional[Proof]:
        s = self.build_pre(p, q)
        if s is None:
            return None
        return Proof(p, q, self.axiom_set, s, self.alphabet)


# --- conformance equivalence ------------------------------------------------


class ConfEquivProver:
    """Proofs of ``p = q`` over A_CS_eq via ``p = p + q`` and ``q = q + p``,
    each obtained summand by summand from ``a.p' = a.p' + a.q'``."""

    axiom_set = A_CS_EQ

    def __init__(self, alphabet: Optional[Alphabet] = None):
        self.alphabet = alphabet
        self.memo: dict = {}
        self.memo_abs: dict = {}
        self._eq = SCHEMAS["S_CS_eq"]
        self._inv = SCHEMAS["S_inv_CS_eq"]

    def join(self, p: Term, q: Term) -> Optional[Step]:
        key = (p, q)
        memo = self.memo
        if key in memo:
            return memo[key]
        s = self.build_join(p, q)
        memo[key] = s
        return s

    def absorb(self, a: str, p1: Term, q1: Term) -> Optional[Step]:
        """``a.p1 = a.p1 + a.q1`` whenever p1 conformance-simulates below q1."""
        key = (a, p1, q1)
        memo = self.memo_abs
        if key in memo:
            return memo[key]
        s = self._build_absorb(a, p1, q1)
        memo[key] = s
        return s

    def _build_absorb(self, a: str, p1: Term, q1: Term) -> Optional[Step]:
        ip = p1.initials
        if not ip <= q1.initials:
            return None
        q2 = q1.restrict(ip)
        r = Term(s for s in q1.summands if s[0] not in ip)
        ih = self.join(p1, q2)  # p1 = p1 + q2
        if ih is None:
            return None
        ap1 = mk(a, p1)
        aq2 = mk(a, q2)
        if ih.trivial:
            # q2 is already absorbed into p1, so a.(p1 + q2) is a.p1
            e1 = refl(ap1) if q2 is p1 else None
            if e1 is None:
                e1 = axiom(self._inv, {"a": a, "p": q2, "q": p1}, alphabet=self.alphabet, check=False)
        else:
            pre = prefix(a, ih)  # a.p1 = a.(p1 + q2)
            inv = axiom(self._inv, {"a": a, "p": q2, "q": p1}, alphabet=self.alphabet, check=False)
            e1 = trans(pre, inv, plus(sym(pre), refl(aq2)))
        if r is NIL:
            return e1
        e2 = axiom(self._eq, {"a": a, "p": q2, "q": r}, alphabet=self.alphabet, check=False)
        return absorb_trans(e1, e2, mk(a, q1))

    def build_join(self, p: Term, q: Term) -> Optional[Step]:
        """``p = p + q`` for ``p`` below ``q`` in the conformance precongruence."""
        if p is q:
            return refl(p)
        if not q.initials <= p.initials:
            return None
        items = []
        for a, q1 in q.summands:
            for b, p1 in p.summands:
                if b != a:
                    continue
                s = self.absorb(a, p1, q1)
                if s is not None:
                    items.append((s, mk(a, q1)))
                    break
            else:
                return None
        if not p.initials <= q.initials:
            return None
        return _absorb_chain(p, items)

    def build(self, p: Term, q: Term) -> Optional[Step]:
        e1 = self.build_join(p, q)
        if e1 is None:
            return None
        e2 = self.build_join(q, p)
        if e2 is None:
            return None
        return trans(e1, sym(e2))

    def prove(self, p: Term, q: Term) -> Optional[Proof]:
        s = self.build(p, q)
        if s is None:
            return None
        return Proof(p, q, self.axiom_set, s, self.alphabet)


# --- covariant-contravariant equivalence ------------------------------------


def _grow_chain(a: str, x: Term, summands: Sequence, schema, slot: str, alphabet) -> Step:
    """``a.x = a.x + a.(x + s1 + ... + sk)``, one schema application per
    summand (S2_eq for covariant ``a``, S3_eq for contravariant ``a``)."""
    acc = None
    cur = x
    for b, y in summands:
        nxt = cur + Term(((b, y),))
        if nxt is cur:
            continue
        head = "a_r" if schema.name == "S2_eq" else "a_l"
        st = axiom(schema, {"x": cur, head: a, slot: b, "y": y}, alphabet=alphabet, check=False)
        acc = st if acc is None else absorb_trans(acc, st, mk(a, nxt))
        cur = nxt
    return acc if acc is not None else refl(mk(a, x))


def _shrink_chain(a: str, x: Term, summands: Sequence, schema, slot: str, alphabet) -> Step:
    """``a.(x + s1 + ... + sk) = a.(x + ...) + a.x`` by induction on k
    (S1_eq for covariant ``a``, S4_eq for contravariant ``a``)."""
    head = "a_r" if schema.name == "S1_eq" else "a_l"
    full = x + Term(summands)
    if not summands or full is x:
        return refl(mk(a, full))
    *init, (b, y) = summands
    rest = x + Term(init)
    st = axiom(schema, {"x": rest, head: a, slot: b, "y": y}, alphabet=alphabet, check=False)
    if not init:
        return st
    return absorb_trans(st, _shrink_chain(a, x, init, schema, slot, alphabet), mk(a, x))


class CCEquivProver:
    """Proofs of ``p = q`` over A_CC_eq for alphabets without bivariant
    actions.

    ``absorb(a, U, V)`` proves ``a.U = a.U + a.V``; it needs ``V`` below ``U``
    when ``a`` is covariant and ``U`` below ``V`` when ``a`` is contravariant.
    For covariant ``a`` it grows ``U`` by the covariant part of ``V``
    (sub-absorptions), adds the contravariant part of ``V`` with S2_eq,
    absorbs the contravariant part of ``U`` into that of ``V`` and finally
    drops the covariant summands of ``U`` not in ``V`` with S1_eq.  The
    contravariant case is the mirror image with S3_eq and S4_eq.
    """

    axiom_set = A_CC_EQ

    def __init__(self, alphabet: Alphabet):
        if alphabet.bivariant:
            raise BivariantAlphabetError(
                "cc-equivalence has no finite equational axiomatisation once bivariant "
                "actions are present; A_CC_eq only applies when A^bi is empty"
            )
        self.alphabet = alphabet
        self.pols = _polarities(alphabet)
        self.memo: dict = {}

    def absorb(self, a: str, u: Term, v: Term) -> Optional[Step]:
        key = (a, u, v)
        memo = self.memo
        if key in memo:
            return memo[key]
        s = self._build_absorb(a, u, v)
        memo[key] = s
        return s

    def _witnesses(self, movers, pool) -> Optional[list]:
        """For each ``(b, t)`` in ``movers`` find ``(b, w)`` in ``pool`` with
        ``b.w = b.w + b.t``."""
        out = []
        for b, t in movers:
            for c, w in pool:
                if c != b:
                    continue
                s = self.absorb(b, w, t)
                if s is not None:
                    out.append((s, mk(b, t)))
                    break
            else:
                return None
        return out

    def _build_absorb(self, a: str, u: Term, v: Term) -> Optional[Step]:
        if u is v:
            return refl(mk(a, u))
        pol = _pol(self.pols, a)
        ur, ul, _ = _split(u, self.pols)
        vr, vl, _ = _split(v, self.pols)
        al = self.alphabet
        if pol is Polarity.COVARIANT:
            grow, fill, drop = vr, vl, ur
            absorbed, keep = ul, vl
            fill_schema, fill_slot = SCHEMAS["S2_eq"], "b_l"
            drop_schema, drop_slot = SCHEMAS["S1_eq"], "b_r"
        else:
            grow, fill, drop = vl, vr, ul
            absorbed, keep = ur, vr
            fill_schema, fill_slot = SCHEMAS["S3_eq"], "b_r"
            drop_schema, drop_slot = SCHEMAS["S4_eq"], "b_l"
        # own summands absorb the same-polarity summands of v
        w_grow = self._witnesses(grow, u.summands)
        if w_grow is None:
            return None
        # summands of v absorb the opposite-polarity summands of u
        w_abs = self._witnesses(absorbed, keep)
        if w_abs is None:
            return None
        x1 = u + Term(grow)
        e_u = _absorb_chain(u, w_grow)  # U = U + grow
        au = mk(a, u)
        a1 = plus(refl(au), prefix(a, e_u))  # aU = aU + aX1
        x2 = x1 + Term(fill)
        a2 = _grow_chain(a, x1, fill, fill_schema, fill_slot, al)  # aX1 = aX1 + aX2
        x3 = Term(s for s in x2.summands if s not in absorbed or s in fill)
        g = _absorb_chain(x3, w_abs)  # X3 = X3 + absorbed = X2
        a3 = plus(refl(mk(a, x2)), sym(prefix(a, g)))  # aX2 = aX2 + aX3
        extra = [s for s in drop if s not in v.summands]
        a4 = _shrink_chain(a, v, extra, drop_schema, drop_slot, al)  # aX3 = aX3 + aV
        out = absorb_trans(a1, a2, mk(a, x2))
        out = absorb_trans(out, a3, mk(a, x3))
        return absorb_trans(out, a4, mk(a, v))

    def half(self, p: Term, q: Term) -> Optional[Step]:
        """``p = p + q`` when ``p`` and ``q`` are cc-equivalent."""
        if p is q:
            return refl(p)
        items = []
        for a, v in q.summands:
            for b, u in p.summands:
                if b != a:
                    continue
                s = self.absorb(a, u, v)
                if s is not None:
                    items.append((s, mk(a, v)))
                    break
            else:
                return None
        return _absorb_chain(p, items)

    def build(self, p: Term, q: Term) -> Optional[Step]:
        e1 = self.half(p, q)
        if e1 is None:
            return None
        e2 = self.half(q, p)
        if e2 is None:
            return None
        return trans(e1, sym(e2))

    def prove(self, p: Term, q: Term) -> Optional[Proof]:
        self.alphabet.check_term(p)
        self.alphabet.check_term(q)
        s = self.build(p, q)
        if s is None:
            return None
        return Proof(p, q, self.axiom_set, s, self.alphabet)


def expand_derived_axiom(name: str, sigma: dict, alphabet: Alphabet) -> Proof:
    """Primitive proof of DS1 ``a_r.(x + p_r) = a_r.(x + p_r) + a_r.(x + p_l)``
    or DS2 ``a_l.(x + p_l) = a_l.(x + p_l) + a_l.(x + p_r)``.

    ``sigma`` binds ``x``, ``p_r`` (covariant-prefixed sum), ``p_l``
    (contravariant-prefixed sum) and the head action ``a_r`` or ``a_l``.
    """
    from .axioms import InvalidSubstitution

    pols = _polarities(alphabet)
    x, pr, pl = sigma["x"], sigma.get("p_r", NIL), sigma.get("p_l", NIL)
    for term, want, label in ((pr, Polarity.COVARIANT, "p_r"), (pl, Polarity.CONTRAVARIANT, "p_l")):
        for a, _ in term.summands:
            if _pol(pols, a) is not want:
                raise InvalidSubstitution(f"{label} has a summand prefixed by {a!r} of the wrong polarity")
    if name == "DS1":
        a = sigma.get("a_r")
        if a is None or _pol(pols, a) is not Polarity.COVARIANT:
            raise InvalidSubstitution("DS1 needs a covariant head action a_r")
        eq1 = _shrink_chain(a, x, list(pr.summands), SCHEMAS["S1_eq"], "b_r", alphabet)
        eq2 = _grow_chain(a, x, list(pl.summands), SCHEMAS["S2_eq"], "b_l", alphabet)
        lhs, added = mk(a, x + pr), mk(a, x + pl)
    elif name == "DS2":
        a = sigma.get("a_l")
        if a is None or _pol(pols, a) is not Polarity.CONTRAVARIANT:
            raise InvalidSubstitution("DS2 needs a contravariant head action a_l")
        eq1 = _shrink_chain(a, x, list(pl.summands), SCHEMAS["S4_eq"], "b_l", alphabet)
        eq2 = _grow_chain(a, x, list(pr.summands), SCHEMAS["S3_eq"], "b_r", alphabet)
        lhs, added = mk(a, x + pl), mk(a, x + pr)
    else:
        raise ValueError(f"unknown derived axiom {name!r}; expected DS1 or DS2")
    step = absorb_trans(eq1, eq2, added)
    return Proof(lhs, lhs + added, A_CC_EQ, step, alphabet)


# --- module-level entry points ----------------------------------------------


def prove_cc_preorder(p: Term, q: Term, alphabet: Alphabet) -> Optional[Proof]:
    return CCPreorderProver(alphabet).prove(p, q)


def prove_conf_precong(p: Term, q: Term, alphabet: Optional[Alphabet] = None) -> Optional[Proof]:
    return ConfPrecongProver(alphabet).prove(p, q)


def prove_cc_equiv(p: Term, q: Term, alphabet: Alphabet) -> Optional[Proof]:
    return CCEquivProver(alphabet).prove(p, q)


def prove_conf_equiv(p: Term, q: Term, alphabet: Optional[Alphabet] = None) -> Optional[Proof]:
    return ConfEquivProver(alphabet).prove(p, q)


_PROVERS = {
    "cc_sim": CCPreorderProver,
    "conf_precong": ConfPrecongProver,
    "cc_equiv": CCEquivProver,
    "conf_equiv": ConfEquivProver,
}


def prover_for(relation, alphabet: Optional[Alphabet]):
    """The prover class instance for a relation kind name."""
    key = getattr(relation, "value", relation)
    try:
        cls = _PROVERS[key]
    except KeyError:
        raise ValueError(f"no prover for relation {key!r}; choose one of {sorted(_PROVERS)}") from None
    if cls in (CCPreorderProver, CCEquivProver) and alphabet is None:
        raise AlphabetError(f"{key} needs an alphabet")
    return cls(alphabet)
