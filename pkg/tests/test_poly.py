import random

import pytest
from hypothesis import given, strategies as st

from projram.poly import (
    LEX,
    MultiPoly,
    Ring,
    UniPoly,
    det_poly_matrix,
    leibniz_det,
    parse_poly,
)

P = 32003
coeff_lists = st.lists(st.integers(0, P - 1), max_size=6)


@given(coeff_lists, coeff_lists)
def test_leibniz_rule(a, b):
    f, g = UniPoly(a, P), UniPoly(b, P)
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


@given(coeff_lists, st.integers(0, P - 1), st.integers(0, P - 1))
def test_shift_is_composition(a, c, x):
    f = UniPoly(a, P)
    assert f.shift(c)(x) == f((x + c) % P)


def test_trailing_zeros_trimmed():
    assert UniPoly([1, 2, 0, 0], P).coeffs == (1, 2)
    assert UniPoly([0, 0], P).degree == -1


def test_text_form():
    R = Ring("x y z", P)
    f = R.parse("3*x^2*y - y*z + 5")
    # coefficients print as canonical residues in [0, p)
    assert str(f) == f"3*x^2*y + {P - 1}*y*z + 5"
    assert parse_poly(R, str(f)) == f


def test_degrevlex_order():
    R = Ring("x y z", P)
    terms = R.parse("x*z + y^2 + x^2 + z^3").sorted_terms()
    names = [str(MultiPoly(R, {e: c})) for e, c in terms]
    assert names == ["z^3", "x^2", "y^2", "x*z"]


def test_lex_order():
    R = Ring("x y", P, LEX)
    assert R.parse("y^5 + x").leading_monomial() == (1, 0)


def _random_matrix(R, n, rng):
    def entry():
        return R.from_terms([((rng.randrange(2), rng.randrange(2)), rng.randrange(P)) for _ in range(2)])
    return [[entry() for _ in range(n)] for _ in range(n)]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
def test_determinant_matches_leibniz(n):
    R = Ring("x y", P)
    m = _random_matrix(R, n, random.Random(n))
    assert det_poly_matrix(m) == leibniz_det(m)


def test_berkowitz_on_small_matrices():
    from projram.poly import _berkowitz
    R = Ring("x y", P)
    rng = random.Random(9)
    for n in range(1, 6):
        m = _random_matrix(R, n, rng)
        assert _berkowitz(m, R) == leibniz_det(m)


def test_partial_derivative_and_eval():
    R = Ring("x y", P)
    f = R.parse("x^3*y + 2*y^2")
    assert f.derivative("x") == R.parse("3*x^2*y")
    assert f.eval([2, 3]) == (8 * 3 + 18) % P
