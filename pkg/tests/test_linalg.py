import random

from hypothesis import given, strategies as st

from projram import linalg

P = 32003


@given(st.integers(1, 6), st.integers(0, 10**6))
def test_inverse_roundtrip(n, seed):
    rng = random.Random(seed)
    g = linalg.random_invertible(n, P, rng)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    assert linalg.matmul(g, linalg.inverse(g, P), P) == ident


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 10**6))
def test_rank_nullity(rows, cols, seed):
    rng = random.Random(seed)
    m = [[rng.randrange(3) for _ in range(cols)] for _ in range(rows)]
    ns = linalg.nullspace(m, P, cols)
    assert linalg.rank(m, P) + len(ns) == cols
    for v in ns:
        assert not any(linalg.matvec(m, v, P))


def test_det_multiplicative():
    rng = random.Random(1)
    a = [[rng.randrange(P) for _ in range(4)] for _ in range(4)]
    b = [[rng.randrange(P) for _ in range(4)] for _ in range(4)]
    assert linalg.det(linalg.matmul(a, b, P), P) == linalg.det(a, P) * linalg.det(b, P) % P
