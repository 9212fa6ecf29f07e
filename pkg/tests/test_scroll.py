import random

import pytest
from hypothesis import given, strategies as st

from projram import linalg
from projram.poly import UniPoly
from projram.scroll import (
    Partition,
    RamCoeffs,
    THREEFOLD_SIGN,
    dims_match,
    kymh_lower_bound,
    ram_determinant,
    ram_differential,
    ram_threefold_closed,
    random_frame,
    requirement_holds,
    section_to_vector,
    stabilizer_dim_source,
    stabilizer_dim_target,
    threefold_frame,
    vector_to_section,
    wronskian,
)

P = 32003
partitions = st.sampled_from([(1,), (3,), (1, 1), (1, 2), (2, 2), (2, 3), (1, 1, 1), (1, 1, 2)])
seeds = st.integers(0, 10**9)


def test_partition_parsing():
    assert Partition("2,1").parts == (1, 2)
    assert Partition((3, 1, 2)).r == 3
    with pytest.raises(ValueError):
        Partition("0,2")
    with pytest.raises(ValueError):
        Partition("a,b")


@given(partitions)
def test_dimensions_match(parts):
    P_ = Partition(parts)
    a, b = dims_match(P_)
    assert a == b == P_.chart_dim
    assert P_.ram_length == P_.r * P_.d + P_.d - P_.r


def test_rational_normal_curve_dimensions():
    for n in range(2, 8):
        P_ = Partition((n,))
        assert dims_match(P_) == (2 * (n - 1), 2 * n - 2)


def test_kymh_bound():
    assert kymh_lower_bound(3, 1, 2) == 2 * 2 + 1


@given(partitions, seeds)
def test_section_roundtrip(parts, seed):
    rng = random.Random(seed)
    s = random_frame(parts, P, rng)[0]
    assert vector_to_section(section_to_vector(s, parts), parts, P) == s


@given(partitions, seeds)
def test_routes_agree(parts, seed):
    F = random_frame(parts, P, random.Random(seed))
    assert ram_determinant(F, parts) == ram_differential(F, parts)


@given(partitions, seeds)
def test_degree_bounds(parts, seed):
    P_ = Partition(parts)
    R = ram_differential(random_frame(P_, P, random.Random(seed)), P_)
    for c, bound in zip(R.components, P_.ram_degrees):
        assert c.degree <= bound
    assert RamCoeffs.from_list(R.to_list(), P_, P) == R


@given(partitions, seeds)
def test_gl_covariance(parts, seed):
    """Replacing the frame by g . F multiplies the ramification by det g."""
    P_ = Partition(parts)
    rng = random.Random(seed)
    F = random_frame(P_, P, rng)
    g = linalg.random_invertible(P_.r + 1, P, rng)
    G = []
    for i in range(P_.r + 1):
        sec = []
        for j in range(P_.r):
            acc = UniPoly([], P)
            for k in range(P_.r + 1):
                acc = acc + F[k][j] * g[i][k]
            sec.append(acc)
        G.append(tuple(sec))
    assert ram_differential(G, P_) == ram_differential(F, P_).scale(linalg.det(g, P))


@given(partitions, seeds, st.integers(0, P - 1))
def test_shift_covariance(parts, seed, c):
    P_ = Partition(parts)
    F = random_frame(P_, P, random.Random(seed))
    shifted = [tuple(f.shift(c) for f in s) for s in F]
    assert ram_differential(shifted, P_) == ram_differential(F, P_).shift(c)


def test_wronskian_example():
    for n in range(1, 6):
        one, tn = UniPoly([1], P), UniPoly.monomial(n, P)
        assert wronskian(one, tn) == UniPoly.monomial(n - 1, P, n)
        assert ram_determinant([(one,), (tn,)], (n,)).components[0] == wronskian(one, tn)


def test_improper_ramification_is_zero():
    one, t = UniPoly([1], P), UniPoly([0, 1], P)
    F = [(one, t), (t, t * t), (one + t, t + t * t)]   # third section = sum of the first two
    assert ram_differential(F, (1, 2)).is_zero()


@pytest.mark.parametrize("k", [0, 1, 2])
def test_threefold_closed_form(k):
    rng = random.Random(k)
    for _ in range(10):
        polys = [UniPoly([rng.randrange(P) for _ in range(k + 2)], P) for _ in range(4)]
        expected = ram_determinant(threefold_frame(*polys), (1, 1, k + 1)).scale(THREEFOLD_SIGN)
        assert ram_threefold_closed(*polys, k) == expected


def test_threefold_degree_guard():
    big = UniPoly([1, 1, 1, 1], P)
    with pytest.raises(ValueError):
        ram_threefold_closed(big, big, big, big, 0)


@pytest.mark.parametrize("parts,target,source", [
    ((1, 1), 0, 0),
    ((1, 1, 2), 0, 0),
    ((2, 2), 0, 0),
    ((1, 1, 1, 2), 1, 0),
    ((1, 1, 1, 3), 2, 0),
    ((1, 1, 1, 1, 2), 2, 0),
])
def test_stabilizers(parts, target, source):
    assert stabilizer_dim_target(parts) == target
    assert stabilizer_dim_source(parts) == source


def test_requirement_sweep():
    for b in range(2, 7):
        for r in range(2, 7):
            assert requirement_holds(1, b, r) == (r >= 4)
    with pytest.raises(ValueError):
        requirement_holds(2, 2, 3)


def test_surface_example():
    one, zero, t = UniPoly([1], P), UniPoly([], P), UniPoly([0, 1], P)
    F = [(one, zero), (zero, one), (t, one + t)]
    assert ram_determinant(F, (1, 1)).to_list() == [1, 0, 1, 0]
    assert ram_differential(F, (1, 1)).to_list() == [1, 0, 1, 0]


def test_repeated_section_is_zero():
    rng = random.Random(0)
    F = random_frame((2, 3), P, rng)
    F[2] = F[0]
    assert ram_determinant(F, (2, 3)).is_zero() and ram_differential(F, (2, 3)).is_zero()


def test_wronskian_small_cases():
    one, t = UniPoly([1], P), UniPoly([0, 1], P)
    assert wronskian(one, t) == one
    assert wronskian(t, t * t) == t * t
    f = UniPoly([3, 1, 4], P)
    assert wronskian(f, f).is_zero()


def test_threefold_special_values():
    zero, one, t = UniPoly([], P), UniPoly([1], P), UniPoly([0, 1], P)
    R = ram_threefold_closed(zero, zero, zero, one, 0)
    assert R.components == (one, zero, zero)
    R = ram_threefold_closed(one, zero, zero, zero, 0)
    assert R.components == (zero, t, zero)
