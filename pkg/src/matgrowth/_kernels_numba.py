"""Numba-compiled kernels, drop-in equivalents of the numpy batch kernels.

Same contracts as _kernels_numpy; plain nested loops over the (N, b, b)
stack compiled with nogil so sweep shards can run on threads.
"""

from __future__ import annotations

import numpy as np
from numba import njit

I64_MAX = np.iinfo(np.int64).max
SAT_CAP = np.int64(1) << 20


@njit(cache=True, nogil=True)
def norm_sequences(mats, horizon):
    n_mats, b, _ = mats.shape
    norms = np.full((n_mats, horizon), -1, dtype=np.int64)
    overflow = np.zeros(n_mats, dtype=np.bool_)
    # see the numpy twin: exactness of the product and of its entry sum
    # needs max(acc) <= I64_MAX / b^3
    guard = I64_MAX // (b * b * b)
    acc = np.empty((b, b), dtype=np.int64)
    nxt = np.empty((b, b), dtype=np.int64)
    for m in range(n_mats):
        base = mats[m]
        total = np.int64(0)
        for i in range(b):
            for j in range(b):
                acc[i, j] = base[i, j]
                total += base[i, j]
        norms[m, 0] = total
        for step in range(1, horizon):
            biggest = np.int64(0)
            for i in range(b):
                for j in range(b):
                    if acc[i, j] > biggest:
                        biggest = acc[i, j]
            if biggest > guard:
                overflow[m] = True
                break
            total = np.int64(0)
            for i in range(b):
                for j in range(b):
                    s = np.int64(0)
                    for k in range(b):
                        s += acc[i, k] * base[k, j]
                    nxt[i, j] = s
                    total += s
            for i in range(b):
                for j in range(b):
                    acc[i, j] = nxt[i, j]
            norms[m, step] = total
    return norms, overflow


@njit(cache=True, nogil=True)
def structure_flags(mats):
    n_mats, b, _ = mats.shape
    p1 = np.zeros(n_mats, dtype=np.bool_)
    p2 = np.zeros(n_mats, dtype=np.bool_)
    d_mask = np.zeros((n_mats, b), dtype=np.bool_)
    nilpotent = np.zeros(n_mats, dtype=np.bool_)
    bounded = np.zeros(n_mats, dtype=np.bool_)
    closure = np.empty((b, b), dtype=np.bool_)
    for m in range(n_mats):
        base = mats[m]
        for i in range(b):
            for j in range(b):
                closure[i, j] = base[i, j] != 0
        for k in range(b):
            for i in range(b):
                if closure[i, k]:
                    for j in range(b):
                        if closure[k, j]:
                            closure[i, j] = True
        on_cycle = False
        for i in range(b):
            if closure[i, i]:
                d_mask[m, i] = True
                on_cycle = True
        nilpotent[m] = not on_cycle
        ok1 = True
        for j in range(b):
            col = False
            for i in range(b):
                if base[i, j] != 0:
                    col = True
                    break
            if col:
                row = False
                for k in range(b):
                    if base[j, k] != 0:
                        row = True
                        break
                if not row:
                    ok1 = False
                    break
        p1[m] = ok1
        ok2 = True
        for i in range(b):
            if d_mask[m, i]:
                deg = 0
                for j in range(b):
                    if base[i, j] != 0 and closure[i, j] and closure[j, i]:
                        deg += 1
                if deg != 1:
                    ok2 = False
                    break
        p2[m] = ok2
        okb = True
        for j in range(b):
            reachable = d_mask[m, j]
            if not reachable:
                for i in range(b):
                    if d_mask[m, i] and closure[i, j]:
                        reachable = True
                        break
            if reachable:
                deg = 0
                for k in range(b):
                    if base[j, k] != 0:
                        deg += 1
                if deg != 1:
                    okb = False
                    break
        bounded[m] = okb
    return p1, p2, d_mask, nilpotent, bounded


@njit(cache=True, nogil=True)
def diag_bounded_by_one(mats, max_k):
    n_mats, b, _ = mats.shape
    ok = np.ones(n_mats, dtype=np.bool_)
    acc = np.empty((b, b), dtype=np.int64)
    nxt = np.empty((b, b), dtype=np.int64)
    for m in range(n_mats):
        base = mats[m]
        for i in range(b):
            for j in range(b):
                acc[i, j] = base[i, j]
        good = True
        for _ in range(max_k):
            for i in range(b):
                if acc[i, i] > 1:
                    good = False
                    break
            if not good:
                break
            for i in range(b):
                for j in range(b):
                    s = np.int64(0)
                    for k in range(b):
                        s += acc[i, k] * base[k, j]
                    if s > SAT_CAP:
                        s = SAT_CAP
                    nxt[i, j] = s
            for i in range(b):
                for j in range(b):
                    acc[i, j] = nxt[i, j]
        ok[m] = good
    return ok


@njit(cache=True, nogil=True)
def first_diag_ge2(mats, max_k):
    n_mats, b, _ = mats.shape
    k_arr = np.full(n_mats, -1, dtype=np.int64)
    i_arr = np.full(n_mats, -1, dtype=np.int64)
    acc = np.empty((b, b), dtype=np.int64)
    nxt = np.empty((b, b), dtype=np.int64)
    for m in range(n_mats):
        base = mats[m]
        for i in range(b):
            for j in range(b):
                acc[i, j] = base[i, j]
        for k in range(1, max_k + 1):
            hit = -1
            for i in range(b):
                if acc[i, i] >= 2:
                    hit = i
                    break
            if hit >= 0:
                k_arr[m] = k
                i_arr[m] = hit + 1
                break
            for i in range(b):
                for j in range(b):
                    s = np.int64(0)
                    for kk in range(b):
                        s += acc[i, kk] * base[kk, j]
                    if s > SAT_CAP:
                        s = SAT_CAP
                    nxt[i, j] = s
            for i in range(b):
                for j in range(b):
                    acc[i, j] = nxt[i, j]
    return k_arr, i_arr
