"""Sparse symmetric similarity accumulator over canonical node pairs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np
import scipy.sparse as sp


@dataclass
class SimilarityAccumulator:
    """Map from canonical pairs (u < v) to accumulated weight.

    Stored as parallel arrays sorted lexicographically by (u, v); weights are
    nonnegative and exact zeros are absent.  Backed by upper-triangular sparse
    matrices so pair volumes in the millions stay cheap.
    """

    n: int
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray

    @classmethod
    def empty(cls, n: int) -> "SimilarityAccumulator":
        z = np.empty(0, dtype=np.int64)
        return cls(n, z, z.copy(), np.empty(0, dtype=np.float64))

    @classmethod
    def from_matrix(cls, mat: sp.spmatrix, n: int) -> "SimilarityAccumulator":
        """Build from any sparse matrix; strictly-upper entries are taken as
        the canonical pairs and explicit zeros dropped."""
        coo = sp.triu(mat, k=1).tocoo()
        keep = coo.data != 0.0
        u = coo.row[keep].astype(np.int64)
        v = coo.col[keep].astype(np.int64)
        w = coo.data[keep].astype(np.float64)
        order = np.lexsort((v, u))
        return cls(n, u[order], v[order], w[order])

    def __len__(self) -> int:
        return len(self.w)

    def items(self) -> Iterator[tuple[tuple[int, int], float]]:
        for a, b, c in zip(self.u.tolist(), self.v.tolist(), self.w.tolist()):
            yield (a, b), c

    def get(self, a: int, b: int, default: float = 0.0) -> float:
        if a == b:
            return default
        if a > b:
            a, b = b, a
        lo = np.searchsorted(self.u, a, side="left")
        hi = np.searchsorted(self.u, a, side="right")
        k = lo + np.searchsorted(self.v[lo:hi], b, side="left")
        if k < hi and self.v[k] == b:
            return float(self.w[k])
        return default

    def to_matrix(self) -> sp.csr_matrix:
        """Strictly upper-triangular CSR view of the pair weights."""
        return sp.csr_matrix((self.w, (self.u, self.v)), shape=(self.n, self.n))

    def to_dense(self) -> np.ndarray:
        """Symmetric dense matrix (tests and small graphs only)."""
        m = np.zeros((self.n, self.n))
        m[self.u, self.v] = self.w
        m[self.v, self.u] = self.w
        return m

    def add(self, other: "SimilarityAccumulator") -> "SimilarityAccumulator":
        """Entrywise sum; one addition per shared pair, in fixed key order."""
        if self.n != other.n:
            raise ValueError("accumulator sizes differ")
        return SimilarityAccumulator.from_matrix(
            self.to_matrix() + other.to_matrix(), self.n)

    def scaled(self, factors: np.ndarray) -> "SimilarityAccumulator":
        """New accumulator with per-pair weights multiplied by ``factors``."""
        w = self.w * factors
        keep = w != 0.0
        return SimilarityAccumulator(self.n, self.u[keep], self.v[keep], w[keep])
