"""Integer encoding of every canonical term within depth/width bounds.

Terms are numbered layer by layer (by exact depth), so every child index is
smaller than its parent's.  Kernels rely on that ordering to fill relation
matrices row by row.
"""

from __future__ import annotations

import os
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .terms import NIL, Term

DEFAULT_MAX_TERMS = 200_000


class EnumerationTooLarge(ValueError):
    pass


def max_terms_from_env() -> int:
    raw = os.environ.get("CCSIM_MAX_TERMS")
    if not raw:
        return DEFAULT_MAX_TERMS
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"CCSIM_MAX_TERMS must be an integer, got {raw!r}") from None


def count_terms(n_actions: int, depth: int, width: int) -> int:
    """Number of canonical terms of depth <= ``depth`` and width <= ``width``."""
    total = 1
    for _ in range(depth):
        m = n_actions * total
        total = sum(comb(m, k) for k in range(min(width, m) + 1))
    return total


class TermTable:
    """All canonical terms over ``actions`` up to the given depth and width.

    Attributes are numpy arrays indexed by term id:

    ``nsum``   number of summands,
    ``act``    action id per summand slot (-1 padded),
    ``child``  child term id per summand slot (-1 padded),
    ``mask``   bitmask of initial actions,
    ``depth``  exact depth.

    ``sum_act``/``sum_child`` describe the summand universe; ``rows`` holds
    each term as sorted summand ids.
    """

    def __init__(self, actions: Sequence[str], max_depth: int, max_width: int, max_terms: int | None = None):
        if max_depth < 0 or max_width < 1:
            raise ValueError("need max_depth >= 0 and max_width >= 1")
        if len(actions) > 62:
            raise ValueError("at most 62 actions fit the initial-set bitmask")
        self.actions = tuple(actions)
        self.action_id = {a: i for i, a in enumerate(self.actions)}
        self.max_depth = max_depth
        self.max_width = max_width
        limit = max_terms_from_env() if max_terms is None else max_terms
        expected = count_terms(len(self.actions), max_depth, max_width)
        if expected > limit:
            raise EnumerationTooLarge(
                f"{expected} terms exceed the cap of {limit} (set CCSIM_MAX_TERMS to raise it)"
            )
        self._build()
        assert self.n == expected
        self._terms: list[Term | None] = [None] * self.n
        self._index: dict[Term, int] | None = None

    def _build(self) -> None:
        W = self.max_width
        nact = len(self.actions)
        sum_act: list[int] = []
        sum_child: list[int] = []
        rows: list[tuple[int, ...]] = [()]
        depth = [0]
        layer_start = [0, 1]
        prev_layer = range(0, 1)
        for d in range(1, self.max_depth + 1):
            m_old = len(sum_act)
            for t in prev_layer:
                for a in range(nact):
                    sum_act.append(a)
                    sum_child.append(t)
            m = len(sum_act)
            start = len(rows)
            for k in range(1, W + 1):
                for last in range(m_old, m):
                    for head in combinations(range(last), k - 1):
                        rows.append(head + (last,))
            depth.extend([d] * (len(rows) - start))
            layer_start.append(len(rows))
            prev_layer = range(start, len(rows))
        self.n = len(rows)
        self.rows = rows
        self.sum_act = np.asarray(sum_act, dtype=np.int32)
        self.sum_child = np.asarray(sum_child, dtype=np.int32)
        tsum = np.full((self.n, W), -1, dtype=np.int32)
        for i, r in enumerate(rows):
            tsum[i, : len(r)] = r
        self.tsum = tsum
        self.nsum = np.array([len(r) for r in rows], dtype=np.int32)
        valid = tsum >= 0
        safe = np.where(valid, tsum, 0)
        self.act = np.where(valid, self.sum_act[safe] if len(sum_act) else 0, -1).astype(np.int32)
        self.child = np.where(valid, self.sum_child[safe] if len(sum_act) else 0, -1).astype(np.int32)
        bits = np.where(valid, np.left_shift(np.int64(1), np.maximum(self.act, 0).astype(np.int64)), 0)
        self.mask = np.bitwise_or.reduce(bits, axis=1).astype(np.int64)
        self.depth = np.asarray(depth, dtype=np.int32)
        self.layer_start = np.asarray(layer_start, dtype=np.int64)

    def __len__(self) -> int:
        return self.n

    def term(self, i: int) -> Term:
        t = self._terms[i]
        if t is None:
            if i == 0:
                t = NIL
            else:
                t = Term(
                    (self.actions[self.sum_act[s]], self.term(int(self.sum_child[s])))
                    for s in self.rows[i]
                )
            self._terms[i] = t
        return t

    def terms(self) -> list[Term]:
        return [self.term(i) for i in range(self.n)]

    def index(self, t: Term) -> int:
        if self._index is None:
            self._index = {self.term(i): i for i in range(self.n)}
        return self._index[t]

    def __iter__(self) -> Iterable[Term]:
        for i in range(self.n):
            yield self.term(i)
