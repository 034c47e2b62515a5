"""Dense reference implementation used to validate the sparse pipeline.

Everything here works on explicit n x n numpy arrays and literal matrix
products, independent of the BFS/sparse production path.  Test-only: guarded
to small n, clarity over speed.
"""
from __future__ import annotations

from typing import Optional

import numpy as np

from .graph import DirectedGraph, ValidationError
from .hierarchy import HierarchyScores

DENSE_GUARD = 512


def dense_closure(g: DirectedGraph, l) -> np.ndarray:
    """Boolean 0/1 reachability matrix: entry (i, j) = 1 iff a directed path
    of length in [1, l] exists.  Computed by entrywise-OR of boolean powers
    A^1 ... A^l (fixed point for l = inf)."""
    if g.n > DENSE_GUARD:
        raise ValidationError(f"dense oracle refuses n > {DENSE_GUARD}")
    a = (g.adj.toarray() != 0)
    acc = a.copy()
    power = a.copy()
    step = 1
    while step < l:
        power = (power @ a) > 0
        nxt = acc | power
        if (nxt == acc).all():
            break
        acc = nxt
        step += 1
    return acc.astype(np.float64)


def dense_similarity(closure: np.ndarray, alpha: float, beta: float,
                     h: Optional[HierarchyScores] = None, delta: float = 1.0
                     ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Literal evaluation of the two similarity matrices and their sum.

    Zero-degree rows/columns use the zero convention (their discount factor
    is 0, matching the sparse path).  The returned sum has a zeroed diagonal,
    matching the no-self-pair rule.  When hierarchy scores are given, each
    common-neighbor term k is damped by
    1 / ((1 + |h_i - h_k|) (1 + |h_j - h_k|))^delta.
    """
    n = closure.shape[0]
    d_out = closure.sum(axis=1)
    d_in = closure.sum(axis=0)

    def disc(deg, e):
        out = np.zeros(n)
        nz = deg > 0
        out[nz] = deg[nz] ** -e
        return out

    oa = disc(d_out, alpha)
    ib = disc(d_in, beta)
    if h is not None:
        m = (1.0 + np.abs(h.score[:, None] - h.score[None, :])) ** -delta
    else:
        m = np.ones((n, n))

    reach_w = closure * m                      # (i, k) term with its i-side damp
    b_o = (oa[:, None] * oa[None, :]) * np.einsum(
        "ik,jk,k->ij", reach_w, reach_w, ib)
    reached_w = closure.T * m                  # (i, k) = 1 iff k reaches i
    c_i = (ib[:, None] * ib[None, :]) * np.einsum(
        "ik,jk,k->ij", reached_w, reached_w, oa)
    a_u = b_o + c_i
    np.fill_diagonal(a_u, 0.0)
    return b_o, c_i, a_u
