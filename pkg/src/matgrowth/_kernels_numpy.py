"""Vectorized numpy kernels for population sweeps.

All kernels take a stack of matrices shaped (N, b, b), dtype int64, entries
0/1, and treat every matrix independently.  Semantics match the exact
single-matrix routines; the docstrings note where a flag is only meaningful
under a side condition.
"""

from __future__ import annotations

import numpy as np

I64_MAX = np.iinfo(np.int64).max

# saturation ceiling for the diagonal oracles: products stay below 2^40 and
# row sums below b * 2^40, far from int64 overflow, while the predicates
# "entry <= 1" and "entry >= 2" survive clipping exactly
SAT_CAP = np.int64(1) << 20


def norm_sequences(mats: np.ndarray, horizon: int):
    """Entry sums of M^1 .. M^horizon per matrix.

    Returns (norms, overflow): norms is (N, horizon) int64, overflow a bool
    mask of rows whose next product could exceed int64; those rows keep -1
    from the first untrusted position on and must be recomputed exactly.
    """
    n_mats, b, _ = mats.shape
    norms = np.full((n_mats, horizon), -1, dtype=np.int64)
    overflow = np.zeros(n_mats, dtype=bool)
    acc = mats.copy()
    norms[:, 0] = acc.sum(axis=(1, 2))
    active = np.ones(n_mats, dtype=bool)
    for step in range(1, horizon):
        max_entry = acc.max(axis=(1, 2))
        # product entries reach b * max and their sum b^2 * that, so the
        # whole step is exact only while max stays under I64_MAX / b^3
        risky = active & (max_entry > I64_MAX // (b * b * b))
        overflow |= risky
        active &= ~risky
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        acc[idx] = np.matmul(acc[idx], mats[idx])
        norms[idx, step] = acc[idx].sum(axis=(1, 2))
    return norms, overflow


def structure_flags(mats: np.ndarray):
    """Per-matrix digraph flags: (p1, p2, d_mask, nilpotent, bounded).

    d_mask[n, i] marks vertex i+1 lying on a cycle.  bounded demands
    out-degree exactly one on every vertex reachable from the cycle set and
    is the growth criterion only for p1 & p2 rows.
    """
    adj = mats.astype(bool)
    n_mats, b, _ = adj.shape
    closure = adj.copy()
    for k in range(b):
        closure |= closure[:, :, k:k + 1] & closure[:, k:k + 1, :]
    d_mask = np.diagonal(closure, axis1=1, axis2=2).copy()
    same_scc = closure & closure.transpose(0, 2, 1)
    within_deg = (adj & same_scc).sum(axis=2)
    p2 = (~d_mask | (within_deg == 1)).all(axis=1)
    out_deg = adj.sum(axis=2)
    hops = np.matmul(d_mask[:, None, :].astype(np.int64),
                     closure.astype(np.int64))[:, 0, :]
    from_cycles = d_mask | (hops > 0)
    bounded = (~from_cycles | (out_deg == 1)).all(axis=1)
    nilpotent = ~d_mask.any(axis=1)
    col_nonzero = adj.any(axis=1)
    row_nonzero = adj.any(axis=2)
    p1 = (~col_nonzero | row_nonzero).all(axis=1)
    return p1, p2, d_mask, nilpotent, bounded


def diag_bounded_by_one(mats: np.ndarray, max_k: int) -> np.ndarray:
    """(M^k)_ii <= 1 for all i and all k <= max_k, with saturating products."""
    n_mats, b, _ = mats.shape
    ok = np.ones(n_mats, dtype=bool)
    acc = np.minimum(mats, SAT_CAP)
    for _ in range(max_k):
        diag = np.diagonal(acc, axis1=1, axis2=2)
        ok &= (diag <= 1).all(axis=1)
        acc = np.minimum(np.matmul(acc, mats), SAT_CAP)
    return ok


def first_diag_ge2(mats: np.ndarray, max_k: int):
    """Smallest exponent k <= max_k with a diagonal entry >= 2, and the
    smallest such vertex (1-based).  Both -1 when no power qualifies."""
    n_mats, b, _ = mats.shape
    k_arr = np.full(n_mats, -1, dtype=np.int64)
    i_arr = np.full(n_mats, -1, dtype=np.int64)
    acc = np.minimum(mats, SAT_CAP)
    for k in range(1, max_k + 1):
        diag = np.diagonal(acc, axis1=1, axis2=2)
        hits = diag >= 2
        fresh = hits.any(axis=1) & (k_arr == -1)
        if fresh.any():
            k_arr[fresh] = k
            i_arr[fresh] = hits[fresh].argmax(axis=1) + 1
        if (k_arr != -1).all():
            break
        acc = np.minimum(np.matmul(acc, mats), SAT_CAP)
    return k_arr, i_arr
