"""Bulk relation evaluation over a :class:`~ccsim.table.TermTable`.

Two backends compute the same matrices: numba loops (default) and a
vectorised numpy path, selected with ``CCSIM_NO_NUMBA=1`` or the ``backend``
argument.  ``R[i, j]`` is the verdict for ``(term i, term j)``.
"""

from __future__ import annotations

import numpy as np

from ._accel import njit, resolve_backend
from .semantics import RelationKind
from .table import TermTable
from .terms import Alphabet, Polarity

__all__ = ["relation_matrix", "base_matrix", "hierarchy_stream", "polarity_masks"]


# --- numba kernels ----------------------------------------------------------


@njit
def _matched(R, a, c, act_o, child_o, n_o, left):
    for l in range(n_o):
        if act_o[l] == a:
            if left:
                if R[c, child_o[l]]:
                    return True
            elif R[child_o[l], c]:
                return True
    return False


@njit
def _nb_cc(nsum, act, child, fwd, bwd):
    n = nsum.shape[0]
    R = np.zeros((n, n), dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            ok = True
            for k in range(nsum[i]):
                a = act[i, k]
                if fwd[a] and not _matched(R, a, child[i, k], act[j], child[j], nsum[j], True):
                    ok = False
                    break
            if ok:
                for k in range(nsum[j]):
                    a = act[j, k]
                    if bwd[a] and not _matched(R, a, child[j, k], act[i], child[i], nsum[i], False):
                        ok = False
                        break
            R[i, j] = ok
    return R


@njit
def _nb_sim(nsum, act, child):
    n = nsum.shape[0]
    R = np.zeros((n, n), dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            ok = True
            for k in range(nsum[i]):
                if not _matched(R, act[i, k], child[i, k], act[j], child[j], nsum[j], True):
                    ok = False
                    break
            R[i, j] = ok
    return R


@njit
def _nb_bisim(nsum, act, child):
    n = nsum.shape[0]
    R = np.zeros((n, n), dtype=np.bool_)
    for i in range(n):
        for j in range(i, n):
            ok = True
            for k in range(nsum[i]):
                if not _matched(R, act[i, k], child[i, k], act[j], child[j], nsum[j], True):
                    ok = False
                    break
            if ok:
                for k in range(nsum[j]):
                    if not _matched(R, act[j, k], child[j, k], act[i], child[i], nsum[i], False):
                        ok = False
                        break
            R[i, j] = ok
            R[j, i] = ok
    return R


@njit
def _nb_conf(nsum, act, child, mask):
    n = nsum.shape[0]
    R = np.zeros((n, n), dtype=np.bool_)
    for i in range(n):
        mi = mask[i]
        for j in range(n):
            if mi & ~mask[j]:
                continue
            ok = True
            for k in range(nsum[j]):
                a = act[j, k]
                if (mi >> a) & 1 and not _matched(R, a, child[j, k], act[i], child[i], nsum[i], False):
                    ok = False
                    break
            R[i, j] = ok
    return R


@njit
def _nb_ready(nsum, act, child, mask, forward):
    n = nsum.shape[0]
    R = np.zeros((n, n), dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            if mask[i] != mask[j]:
                continue
            ok = True
            if forward:
                for k in range(nsum[i]):
                    if not _matched(R, act[i, k], child[i, k], act[j], child[j], nsum[j], True):
                        ok = False
                        break
            else:
                for k in range(nsum[j]):
                    if not _matched(R, act[j, k], child[j, k], act[i], child[i], nsum[i], False):
                        ok = False
                        break
            R[i, j] = ok
    return R


# --- numpy fallback ---------------------------------------------------------


def _np_generic(table: TermTable, fwd, bwd, guard: str | None, bwd_initials: bool = False):
    """Layer-by-layer vectorised evaluation.

    ``fwd``/``bwd`` are boolean arrays over action ids (or ``None``);
    ``guard`` is ``None``, ``"subset"`` or ``"equal"`` on initial sets.
    """
    n = table.n
    W = table.max_width
    act, child, mask = table.act, table.child, table.mask
    R = np.zeros((n, n), dtype=bool)
    act_c = act
    child_c = np.maximum(child, 0)
    starts = table.layer_start
    for lo, hi in zip(starts[:-1], starts[1:]):
        rows = np.arange(lo, hi)
        ok = np.ones((len(rows), n), dtype=bool)
        if guard == "subset":
            ok &= (mask[rows][:, None] & ~mask[None, :]) == 0
        elif guard == "equal":
            ok &= mask[rows][:, None] == mask[None, :]
        a_r = act[rows]
        c_r = np.maximum(child[rows], 0)
        if fwd is not None:
            for k in range(W):
                a = a_r[:, k]
                need = (a >= 0) & fwd[np.maximum(a, 0)]
                if not need.any():
                    continue
                found = np.zeros_like(ok)
                for l in range(W):
                    same = a[:, None] == act_c[None, :, l]
                    found |= same & R[c_r[:, k][:, None], child_c[None, :, l]]
                ok &= ~need[:, None] | found
        if bwd is not None or bwd_initials:
            for l in range(W):
                b = act_c[:, l]
                if bwd_initials:
                    need = (b[None, :] >= 0) & (((mask[rows][:, None] >> np.maximum(b, 0)[None, :]) & 1) == 1)
                else:
                    need = np.broadcast_to(((b >= 0) & bwd[np.maximum(b, 0)])[None, :], ok.shape)
                found = np.zeros_like(ok)
                for k in range(W):
                    same = a_r[:, k][:, None] == b[None, :]
                    found |= same & R[c_r[:, k][:, None], child_c[None, :, l]]
                ok &= ~need | found
        R[rows] = ok
    return R


# --- public API -------------------------------------------------------------


def polarity_masks(table: TermTable, alphabet: Alphabet):
    """Boolean arrays over action ids: which need forward / backward matching."""
    fwd = np.zeros(max(len(table.actions), 1), dtype=np.bool_)
    bwd = np.zeros_like(fwd)
    for i, a in enumerate(table.actions):
        pol = alphabet.polarity(a)
        fwd[i] = pol in (Polarity.COVARIANT, Polarity.BIVARIANT)
        bwd[i] = pol in (Polarity.CONTRAVARIANT, Polarity.BIVARIANT)
    return fwd, bwd


def base_matrix(table: TermTable, kind: RelationKind | str, alphabet: Alphabet | None = None, backend: str | None = None):
    """Matrix of a recursive (simulation-style) relation."""
    kind = RelationKind(kind)
    backend = resolve_backend(backend)
    nact = max(len(table.actions), 1)
    ones = np.ones(nact, dtype=np.bool_)
    zeros = np.zeros(nact, dtype=np.bool_)
    args = (table.nsum, table.act, table.child)
    if kind is RelationKind.CC_SIM:
        if alphabet is None:
            raise ValueError("cc_sim needs an alphabet")
        fwd, bwd = polarity_masks(table, alphabet)
        if backend == "numba":
            return _nb_cc(*args, fwd, bwd)
        return _np_generic(table, fwd, bwd, None)
    if kind is RelationKind.PLAIN_SIM:
        if backend == "numba":
            return _nb_sim(*args)
        return _np_generic(table, ones, None, None)
    if kind is RelationKind.INVERSE_SIM:
        if backend == "numba":
            return _nb_cc(*args, zeros, ones)
        return _np_generic(table, None, ones, None)
    if kind is RelationKind.BISIM:
        if backend == "numba":
            return _nb_bisim(*args)
        return _np_generic(table, ones, ones, None)
    if kind is RelationKind.CONF_SIM:
        if backend == "numba":
            return _nb_conf(*args, table.mask)
        return _np_generic(table, None, None, "subset", bwd_initials=True)
    if kind is RelationKind.READY_SIM:
        if backend == "numba":
            return _nb_ready(*args, table.mask, True)
        return _np_generic(table, ones, None, "equal")
    if kind is RelationKind.READY_CONF_SIM:
        if backend == "numba":
            return _nb_ready(*args, table.mask, False)
        return _np_generic(table, None, ones, "equal")
    raise ValueError(f"{kind} is not a base relation")


def relation_matrix(table: TermTable, kind: RelationKind | str, alphabet: Alphabet | None = None, backend: str | None = None):
    kind = RelationKind(kind)
    if kind is RelationKind.CC_EQUIV:
        R = base_matrix(table, RelationKind.CC_SIM, alphabet, backend)
        return R & R.T
    if kind is RelationKind.CONF_EQUIV:
        R = base_matrix(table, RelationKind.CONF_SIM, None, backend)
        return R & R.T
    if kind is RelationKind.CONF_PRECONG:
        R = base_matrix(table, RelationKind.CONF_SIM, None, backend)
        m = table.mask
        return R & ((m[None, :] & ~m[:, None]) == 0)
    return base_matrix(table, kind, alphabet, backend)


# --- streaming hierarchy check ----------------------------------------------

# violation codes
RCS_VS_RS = 1
RS_EQ_NOT_CS_EQ = 2


@njit
def _nb_summand_rel(sum_act, sum_child, R):
    m = sum_act.shape[0]
    S = np.zeros((m, m), dtype=np.bool_)
    for s in range(m):
        for t in range(m):
            if sum_act[s] == sum_act[t]:
                S[s, t] = R[sum_child[s], sum_child[t]]
    return S


@njit
def _nb_all_exists(S, row_i, n_i, row_j, n_j):
    # every summand of i has an S-partner in j
    for k in range(n_i):
        s = row_i[k]
        hit = False
        for l in range(n_j):
            if S[s, row_j[l]]:
                hit = True
                break
        if not hit:
            return False
    return True


@njit
def _nb_all_exists_rev(S, row_i, n_i, row_j, n_j):
    # every summand of j has an S-partner in i (S indexed [i-summand, j-summand])
    for l in range(n_j):
        t = row_j[l]
        hit = False
        for k in range(n_i):
            if S[row_i[k], t]:
                hit = True
                break
        if not hit:
            return False
    return True


@njit
def _nb_hierarchy(order, bucket_start, tsum, nsum, S_rs, S_rcs, S_cs, max_report):
    found = np.zeros((max_report, 3), dtype=np.int64)
    nfound = 0
    evaluated = 0
    nb = bucket_start.shape[0] - 1
    for b in range(nb):
        lo = bucket_start[b]
        hi = bucket_start[b + 1]
        for x in range(lo, hi):
            i = order[x]
            for y in range(lo, hi):
                j = order[y]
                evaluated += 1
                rs_ji = _nb_all_exists(S_rs, tsum[j], nsum[j], tsum[i], nsum[i])
                rcs_ij = _nb_all_exists_rev(S_rcs, tsum[i], nsum[i], tsum[j], nsum[j])
                code = 0
                if rcs_ij != rs_ji:
                    code = RCS_VS_RS
                elif rs_ji and _nb_all_exists(S_rs, tsum[i], nsum[i], tsum[j], nsum[j]):
                    # initial sets are equal inside a bucket, so conformance
                    # only needs the backward clause in each direction
                    cs_ij = _nb_all_exists_rev(S_cs, tsum[i], nsum[i], tsum[j], nsum[j])
                    cs_ji = _nb_all_exists_rev(S_cs, tsum[j], nsum[j], tsum[i], nsum[i])
                    if not (cs_ij and cs_ji):
                        code = RS_EQ_NOT_CS_EQ
                if code:
                    if nfound < max_report:
                        found[nfound, 0] = i
                        found[nfound, 1] = j
                        found[nfound, 2] = code
                    nfound += 1
    return evaluated, nfound, found[: min(nfound, max_report)]


def _np_summand_rel(sum_act, sum_child, R):
    same = sum_act[:, None] == sum_act[None, :]
    return same & R[sum_child[:, None], sum_child[None, :]]


def _np_hierarchy(order, bucket_start, tsum, nsum, S_rs, S_rcs, S_cs, max_report):
    W = tsum.shape[1]
    found = []
    nfound = 0
    evaluated = 0
    for b in range(len(bucket_start) - 1):
        idx = order[bucket_start[b]:bucket_start[b + 1]]
        rows = tsum[idx]
        valid = rows >= 0
        safe = np.maximum(rows, 0)

        def forall_exists(S, A, vA, B, vB):
            # [x, y]: every summand of A[x] has an S-partner among B[y]
            out = np.ones((len(A), len(B)), dtype=bool)
            for k in range(W):
                hit = np.zeros_like(out)
                for l in range(W):
                    hit |= S[A[:, k][:, None], B[:, l][None, :]] & vB[:, l][None, :]
                out &= ~vA[:, k][:, None] | hit
            return out

        def forall_exists_rev(S, A, vA, B, vB):
            # [x, y]: every summand of B[y] has an S-partner among A[x]
            out = np.ones((len(A), len(B)), dtype=bool)
            for l in range(W):
                hit = np.zeros_like(out)
                for k in range(W):
                    hit |= S[A[:, k][:, None], B[:, l][None, :]] & vA[:, k][:, None]
                out &= ~vB[:, l][None, :] | hit
            return out

        chunk = max(1, 4_000_000 // max(len(idx), 1))
        for c0 in range(0, len(idx), chunk):
            A, vA = safe[c0:c0 + chunk], valid[c0:c0 + chunk]
            rs_ij = forall_exists(S_rs, A, vA, safe, valid)
            rs_ji = forall_exists(S_rs, safe, valid, A, vA).T
            rcs_ij = forall_exists_rev(S_rcs, A, vA, safe, valid)
            cs_ij = forall_exists_rev(S_cs, A, vA, safe, valid)
            cs_ji = forall_exists_rev(S_cs, safe, valid, A, vA).T
            bad1 = rcs_ij != rs_ji
            bad2 = ~bad1 & rs_ij & rs_ji & ~(cs_ij & cs_ji)
            evaluated += bad1.size
            for code, bad in ((RCS_VS_RS, bad1), (RS_EQ_NOT_CS_EQ, bad2)):
                xs, ys = np.nonzero(bad)
                nfound += len(xs)
                for x, y in zip(xs, ys):
                    if len(found) < max_report:
                        found.append((idx[c0 + x], idx[y], code))
    arr = np.asarray(found, dtype=np.int64).reshape(-1, 3)
    return evaluated, nfound, arr


def hierarchy_stream(table: TermTable, backend: str | None = None, max_report: int = 20):
    """Check ready-conformance/ready-simulation duality and RS-equivalence
    inside CS-equivalence on every ordered pair of ``table``.

    Pairs with different initial sets fail both ready relations through
    their guards, so only pairs inside an initial-set bucket are evaluated.
    Child relations come from full matrices over the next-lower layer.

    Returns ``(evaluated, n_violations, violations)`` with rows
    ``(i, j, code)``.
    """
    backend = resolve_backend(backend)
    if table.max_depth == 0:
        lower = table
    else:
        lower = TermTable(table.actions, table.max_depth - 1, table.max_width, max_terms=table.n)
    RS = base_matrix(lower, RelationKind.READY_SIM, backend=backend)
    RCS = base_matrix(lower, RelationKind.READY_CONF_SIM, backend=backend)
    CS = base_matrix(lower, RelationKind.CONF_SIM, backend=backend)
    # every summand of `table` has a child in `lower`, with matching ids
    # because both tables are built by the same deterministic procedure
    sa, sc = table.sum_act, table.sum_child
    assert sc.max(initial=0) < lower.n
    if backend == "numba":
        S = [_nb_summand_rel(sa, sc, M) for M in (RS, RCS, CS)]
    else:
        S = [_np_summand_rel(sa, sc, M) for M in (RS, RCS, CS)]
    order = np.argsort(table.mask, kind="stable")
    sorted_mask = table.mask[order]
    cuts = np.nonzero(np.diff(sorted_mask))[0] + 1
    bucket_start = np.concatenate(([0], cuts, [table.n])).astype(np.int64)
    fn = _nb_hierarchy if backend == "numba" else _np_hierarchy
    evaluated, nfound, found = fn(order, bucket_start, table.tsum, table.nsum, *S, max_report)
    return int(evaluated), int(nfound), np.asarray(found)
