import numpy as np
from hypothesis import strategies as st

from reachsym import graph_from_pairs


@st.composite
def digraphs(draw, min_n=1, max_n=10, max_edges=30):
    n = draw(st.integers(min_n, max_n))
    edges = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
        max_size=max_edges))
    return graph_from_pairs(edges, n=n)


def random_digraph(rng, n, p):
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    us, vs = np.nonzero(mask)
    return graph_from_pairs(list(zip(us.tolist(), vs.tolist())), n=n)


def reach_by_matrix_powers(g, l):
    """Independent reachability oracle: entrywise-OR of A^1..A^l."""
    a = (g.adj.toarray() != 0).astype(np.int64)
    acc = np.zeros_like(a)
    power = np.eye(g.n, dtype=np.int64)
    step = 0
    prev = None
    while step < l:
        power = (power @ a > 0).astype(np.int64)
        acc = acc | power
        step += 1
        if prev is not None and (acc == prev).all():
            break
        prev = acc.copy()
    return acc.astype(bool)
