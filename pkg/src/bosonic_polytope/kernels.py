"""Hot loops of the Fock-space oracle.

Two implementations per kernel: a numba-compiled loop over basis states
and a vectorized numpy path that finds target states by key lookup. The
public wrappers pick numba unless ``BOSONIC_POLYTOPE_NUMBA=0`` is set.

Basis convention: the symmetric N-boson sector over d modes, states in
lexicographic order of their sorted (0-based) orbital index tuples, the
same order as ``itertools.combinations_with_replacement``.
"""

from __future__ import annotations

import itertools
from math import comb

import numpy as np

from ._accel import USE_NUMBA, njit

__all__ = [
    "basis_arrays",
    "binomial_table",
    "one_body_matrix",
    "one_rdm",
    "rank_occupation",
]


def basis_arrays(N: int, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Sorted index tuples ``(dim, N)`` and occupations ``(dim, d)``."""
    states = np.array(list(itertools.combinations_with_replacement(range(d), N)), dtype=np.int64)
    states = states.reshape(-1, N)
    occ = np.zeros((len(states), d), dtype=np.int64)
    for k in range(N):
        np.add.at(occ, (np.arange(len(states)), states[:, k]), 1)
    return states, occ


def binomial_table(n: int) -> np.ndarray:
    table = np.zeros((n + 1, n + 1), dtype=np.int64)
    for a in range(n + 1):
        for b in range(a + 1):
            table[a, b] = comb(a, b)
    return table


@njit(cache=True)
def rank_occupation(occ, N, d, binom):
    """Lexicographic index of an occupation vector in the N-boson sector."""
    rank = 0
    prev = 0
    m = 0
    for v in range(d):
        for _ in range(occ[v]):
            rest = N - m - 1
            for u in range(prev, v):
                rank += binom[d - u + rest - 1, rest]
            prev = v
            m += 1
    return rank


@njit(cache=True)
def _one_body_numba(occ, t, N, binom):
    dim, d = occ.shape
    out = np.zeros((dim, dim), dtype=t.dtype)
    work = np.empty(d, dtype=np.int64)
    for s in range(dim):
        for q in range(d):
            nq = occ[s, q]
            if nq == 0:
                continue
            for p in range(d):
                tpq = t[p, q]
                if tpq == 0:
                    continue
                if p == q:
                    out[s, s] += tpq * nq
                    continue
                for k in range(d):
                    work[k] = occ[s, k]
                work[q] -= 1
                work[p] += 1
                target = rank_occupation(work, N, d, binom)
                out[target, s] += tpq * np.sqrt(nq * (occ[s, p] + 1.0))
    return out


@njit(cache=True)
def _one_rdm_numba(gamma, occ, N, binom):
    dim, d = occ.shape
    out = np.zeros((d, d), dtype=gamma.dtype)
    work = np.empty(d, dtype=np.int64)
    for s in range(dim):
        for p in range(d):
            np_ = occ[s, p]
            if np_ == 0:
                continue
            for q in range(d):
                if p == q:
                    out[p, p] += gamma[s, s] * np_
                    continue
                for k in range(d):
                    work[k] = occ[s, k]
                work[p] -= 1
                work[q] += 1
                target = rank_occupation(work, N, d, binom)
                out[p, q] += gamma[s, target] * np.sqrt(np_ * (occ[s, q] + 1.0))
    return out


def _lookup(occ: np.ndarray):
    """Map occupation rows to basis indices via integer keys."""
    base = occ.sum(axis=1).max() + 1 if len(occ) else 1
    weights = base ** np.arange(occ.shape[1], dtype=np.int64)
    keys = occ @ weights
    order = np.argsort(keys)
    sorted_keys = keys[order]

    def find(rows: np.ndarray) -> np.ndarray:
        return order[np.searchsorted(sorted_keys, rows @ weights)]

    return find


def _one_body_numpy(occ, t):
    dim, d = occ.shape
    out = np.zeros((dim, dim), dtype=t.dtype)
    find = _lookup(occ)
    out[np.diag_indices(dim)] += occ @ np.diag(t)
    for q in range(d):
        src = np.nonzero(occ[:, q])[0]
        for p in range(d):
            if p == q or t[p, q] == 0:
                continue
            moved = occ[src].copy()
            moved[:, q] -= 1
            moved[:, p] += 1
            tgt = find(moved)
            out[tgt, src] += t[p, q] * np.sqrt(occ[src, q] * (occ[src, p] + 1.0))
    return out


def _one_rdm_numpy(gamma, occ):
    dim, d = occ.shape
    out = np.zeros((d, d), dtype=gamma.dtype)
    find = _lookup(occ)
    out[np.diag_indices(d)] = np.diag(gamma) @ occ
    for p in range(d):
        src = np.nonzero(occ[:, p])[0]
        for q in range(d):
            if p == q:
                continue
            moved = occ[src].copy()
            moved[:, p] -= 1
            moved[:, q] += 1
            tgt = find(moved)
            out[p, q] = np.sum(gamma[src, tgt] * np.sqrt(occ[src, p] * (occ[src, q] + 1.0)))
    return out


def one_body_matrix(occ: np.ndarray, t: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    """Matrix of ``sum_pq t[p, q] a_p^dagger a_q`` in the basis given by ``occ``."""
    use_numba = USE_NUMBA if use_numba is None else use_numba
    t = np.asarray(t)
    t = t.astype(np.complex128 if np.iscomplexobj(t) else np.float64)
    occ = np.ascontiguousarray(occ, dtype=np.int64)
    if use_numba:
        N = int(occ[0].sum())
        return _one_body_numba(occ, t, N, binomial_table(N + occ.shape[1]))
    return _one_body_numpy(occ, t)


def one_rdm(gamma: np.ndarray, occ: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    """``rdm[p, q] = Tr[gamma a_q^dagger a_p]`` for a density matrix ``gamma``."""
    use_numba = USE_NUMBA if use_numba is None else use_numba
    gamma = np.asarray(gamma)
    gamma = np.ascontiguousarray(gamma.astype(np.complex128 if np.iscomplexobj(gamma) else np.float64))
    occ = np.ascontiguousarray(occ, dtype=np.int64)
    if use_numba:
        N = int(occ[0].sum())
        return _one_rdm_numba(gamma, occ, N, binomial_table(N + occ.shape[1]))
    return _one_rdm_numpy(gamma, occ)
