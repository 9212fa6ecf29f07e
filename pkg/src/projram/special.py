"""Quadric polarity, nets of conics and triangles of lines on a conic.

Forms in x, y, z are coefficient vectors over the monomials of one degree in
graded-lex order (x > y > z), so degree 2 is ``x^2, xy, xz, y^2, yz, z^2``.
Linear forms and points are plain 3-vectors.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb

from . import linalg
from .ff import check_prime, inv_mod, sqrt_mod


class DegenerateInputError(ValueError):
    """The configuration is too special for the construction."""


def monomials(degree: int):
    return [(a, b, degree - a - b) for a in range(degree, -1, -1) for b in range(degree - a, -1, -1)]


_INDEX = {}


def _index(degree):
    if degree not in _INDEX:
        _INDEX[degree] = {e: i for i, e in enumerate(monomials(degree))}
    return _INDEX[degree]


@dataclass(frozen=True)
class TernaryForm:
    degree: int
    coeffs: tuple
    p: int

    def __post_init__(self):
        check_prime(self.p)
        c = tuple(int(x) % self.p for x in self.coeffs)
        if len(c) != comb(self.degree + 2, 2):
            raise ValueError(f"a degree {self.degree} form has {comb(self.degree + 2, 2)} coefficients")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_terms(cls, degree, terms, p):
        idx = _index(degree)
        c = [0] * len(idx)
        for e, v in terms.items():
            c[idx[tuple(e)]] = (c[idx[tuple(e)]] + v) % p
        return cls(degree, tuple(c), p)

    def terms(self):
        return {e: c for e, c in zip(monomials(self.degree), self.coeffs) if c}

    def is_zero(self):
        return not any(self.coeffs)

    def __add__(self, other):
        return TernaryForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.p)

    def __sub__(self, other):
        return TernaryForm(self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)], self.p)

    def scale(self, s):
        return TernaryForm(self.degree, [s * a for a in self.coeffs], self.p)

    def __mul__(self, other):
        out = {}
        p = self.p
        for e, a in self.terms().items():
            for f, b in other.terms().items():
                k = (e[0] + f[0], e[1] + f[1], e[2] + f[2])
                out[k] = (out.get(k, 0) + a * b) % p
        return TernaryForm.from_terms(self.degree + other.degree, out, p)

    def partial(self, var: int):
        if self.degree == 0:
            return TernaryForm(0, (0,), self.p)
        out = {}
        for e, c in self.terms().items():
            if e[var]:
                f = list(e)
                f[var] -= 1
                out[tuple(f)] = c * e[var]
        return TernaryForm.from_terms(self.degree - 1, out, self.p)

    def __call__(self, pt):
        p = self.p
        return sum(c * pow(pt[0], e[0], p) * pow(pt[1], e[1], p) * pow(pt[2], e[2], p)
                   for e, c in self.terms().items()) % p

    def substitute(self, g):
        """``f(g v)`` for a 3x3 matrix g."""
        lin = [TernaryForm(1, g[i], self.p) for i in range(3)]
        total = TernaryForm(self.degree, [0] * len(self.coeffs), self.p)
        for e, c in self.terms().items():
            term = TernaryForm(0, (c,), self.p)
            for i in range(3):
                for _ in range(e[i]):
                    term = term * lin[i]
            total = total + term
        return total


def linear(v, p) -> TernaryForm:
    return TernaryForm(1, tuple(v), p)


# ---------------------------------------------------------------------------
# conics and polarity


@dataclass(frozen=True)
class Conic:
    """Symmetric 3x3 Gram matrix of a quadratic form ``q(v) = v^T M v``."""
    matrix: tuple
    p: int

    def __post_init__(self):
        check_prime(self.p)
        if self.p == 2:
            raise ValueError("conics need odd characteristic")
        m = tuple(tuple(int(x) % self.p for x in row) for row in self.matrix)
        if len(m) != 3 or any(len(row) != 3 for row in m):
            raise ValueError("expected a 3x3 matrix")
        if any(m[i][j] != m[j][i] for i in range(3) for j in range(3)):
            raise ValueError("matrix is not symmetric")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_form(cls, f: TernaryForm):
        if f.degree != 2:
            raise ValueError("a conic is a quadratic form")
        p = f.p
        h = inv_mod(2, p)
        c = dict(zip(monomials(2), f.coeffs))
        m = [[0] * 3 for _ in range(3)]
        for e, v in c.items():
            idx = [i for i in range(3) for _ in range(e[i])]
            i, j = idx
            if i == j:
                m[i][i] = v
            else:
                m[i][j] = m[j][i] = v * h % p
        return cls(m, p)

    def form(self) -> TernaryForm:
        m, p = self.matrix, self.p
        terms = {}
        for i in range(3):
            for j in range(i, 3):
                e = [0, 0, 0]
                e[i] += 1
                e[j] += 1
                terms[tuple(e)] = m[i][j] * (1 if i == j else 2)
        return TernaryForm.from_terms(2, terms, p)

    def det(self):
        return linalg.det(self.matrix, self.p)

    def is_smooth(self):
        return self.det() != 0

    def __call__(self, v):
        return self.bilinear(v, v)

    def bilinear(self, v, w):
        m, p = self.matrix, self.p
        return sum(v[i] * m[i][j] * w[j] for i in range(3) for j in range(3)) % p

    def rational_point(self, rng=None):
        """A point on the conic; smooth conics over F_p always have one."""
        if not self.is_smooth():
            raise DegenerateInputError("singular conic")
        rng = rng or random.Random(0)
        p = self.p
        m = self.matrix
        for _ in range(200):
            x, y = rng.randrange(p), rng.randrange(p)
            # q(x, y, z) = a z^2 + b z + c
            a = m[2][2]
            b = 2 * (m[0][2] * x + m[1][2] * y) % p
            c = (m[0][0] * x * x + 2 * m[0][1] * x * y + m[1][1] * y * y) % p
            if a == 0:
                if b:
                    z = -c * inv_mod(b, p) % p
                    return (x, y, z)
                if c == 0 and (x or y):
                    return (x, y, 1)
                continue
            disc = (b * b - 4 * a * c) % p
            s = sqrt_mod(disc, p)
            if s is None:
                continue
            z = (-b + s) * inv_mod(2 * a, p) % p
            if x or y or z:
                return (x, y, z)
        raise DegenerateInputError("no rational point found")

    def parametrization(self, rng=None):
        """Quadratic map (s:t) -> point of Q, as three binary quadratics.

        Lines through a point P0 of Q are swept by ``D = s U + t W``; the second
        intersection is ``q(D) P0 - 2 B(P0, D) D``.
        Each coordinate is returned as ``[coeff of t^2, coeff of st, coeff of s^2]``.
        """
        p = self.p
        p0 = self.rational_point(rng)
        basis = _complete_basis(p0, p)
        u, w = basis[1], basis[2]
        qu, qw, buw = self(u), self(w), self.bilinear(u, w)
        bu, bw = self.bilinear(p0, u), self.bilinear(p0, w)
        out = []
        for k in range(3):
            # q(D) = qu s^2 + 2 buw s t + qw t^2, B(P0, D) = bu s + bw t
            t2 = qw * p0[k] - 2 * bw * w[k]
            st = 2 * buw * p0[k] - 2 * (bu * w[k] + bw * u[k])
            s2 = qu * p0[k] - 2 * bu * u[k]
            out.append([t2 % p, st % p, s2 % p])
        return out


def _complete_basis(v, p):
    rows = [list(v)]
    for e in ([1, 0, 0], [0, 1, 0], [0, 0, 1]):
        if linalg.rank(rows + [e], p) > len(rows):
            rows.append(e)
    return rows


def standard_conic(p) -> Conic:
    """``xz = y^2``."""
    return Conic.from_form(TernaryForm(2, (0, 0, 1, p - 1, 0, 0), p))


def quadric_polarity(Q, pt, p):
    """The polar hyperplane ``Q pt`` of a point, for a symmetric matrix Q."""
    if linalg.det(Q, p) == 0:
        raise DegenerateInputError("degenerate quadric")
    if not any(x % p for x in pt):
        raise ValueError("the zero vector is not a point")
    return linalg.matvec(Q, pt, p)


def cross(a, b, p):
    return [(a[1] * b[2] - a[2] * b[1]) % p,
            (a[2] * b[0] - a[0] * b[2]) % p,
            (a[0] * b[1] - a[1] * b[0]) % p]


def normalize(v, p):
    """Scale so the first nonzero entry is 1."""
    for x in v:
        if x % p:
            s = inv_mod(x, p)
            return tuple(y * s % p for y in v)
    raise ValueError("zero vector")


# ---------------------------------------------------------------------------
# nets of conics


def _linear_product(forms, p):
    out = {(0, 0, 0): 1}
    for f in forms:
        nxt = {}
        for e, a in out.items():
            for i in range(3):
                if f[i]:
                    k = list(e)
                    k[i] += 1
                    k = tuple(k)
                    nxt[k] = (nxt.get(k, 0) + a * f[i]) % p
        out = nxt
    return out


_PERMS = [(perm, 1 if sum(perm[i] > perm[j] for i in range(3) for j in range(i + 1, 3)) % 2 == 0 else -1)
          for perm in itertools.permutations(range(3))]


def jacobian_cubic(q1: TernaryForm, q2: TernaryForm, q3: TernaryForm) -> TernaryForm:
    """``det(dq_i / dx_j)``."""
    p = q1.p
    if not (q1.degree == q2.degree == q3.degree == 2):
        raise ValueError("the Jacobian of a net needs three conics")
    grads = [[q.partial(j).coeffs for j in range(3)] for q in (q1, q2, q3)]
    total = {}
    for perm, sign in _PERMS:
        for e, c in _linear_product([grads[i][perm[i]] for i in range(3)], p).items():
            total[e] = (total.get(e, 0) + sign * c) % p
    return TernaryForm.from_terms(3, total, p)


def jacobian_evaluator(p):
    """Jacobian cubic coefficients of three conic coefficient vectors."""
    def ev(vectors):
        return list(jacobian_cubic(*(TernaryForm(2, v, p) for v in vectors)).coeffs)
    return ev


# ---------------------------------------------------------------------------
# triangles of lines on a conic


def _pullback(L, param, p):
    return [sum(L[k] * param[k][i] for k in range(3)) % p for i in range(3)]


def _binary_wronskian(f, g, p):
    """``f_s g_t - f_t g_s`` for binary quadratics ``[t^2, st, s^2]``."""
    # f = f0 t^2 + f1 s t + f2 s^2
    fs = (f[1], 2 * f[2])   # t, s coefficients
    ft = (2 * f[0], f[1])
    gs = (g[1], 2 * g[2])
    gt = (2 * g[0], g[1])

    def mul(a, b):
        return [a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[1] * b[1]]
    x, y = mul(fs, gt), mul(ft, gs)
    return [(a - b) % p for a, b in zip(x, y)]


def ram_line_of_pencil(Li, Lj, Q: Conic, param=None):
    """The line meeting Q in the ramification divisor of the pencil ``<Li, Lj>``."""
    p = Q.p
    if not Q.is_smooth():
        raise DegenerateInputError("singular conic")
    if linalg.rank([list(Li), list(Lj)], p) < 2:
        raise DegenerateInputError("the pencil needs two independent lines")
    param = param or Q.parametrization()
    w = _binary_wronskian(_pullback(Li, param, p), _pullback(Lj, param, p), p)
    if not any(w):
        raise DegenerateInputError("degenerate pencil")
    # columns: pullbacks of x, y, z
    mat = [[param[k][i] for k in range(3)] for i in range(3)]
    aug = [row + [w[i]] for i, row in enumerate(mat)]
    red, piv = linalg.rref(aug, p, 4)
    if 3 in piv or len(piv) < 3:
        raise DegenerateInputError("parametrization is degenerate")
    sol = [0, 0, 0]
    for r, c in enumerate(piv):
        sol[c] = red[r][3]
    return normalize(sol, p)


def polar_conjugate(Q: Conic, L1, L2, L3):
    """``M_i`` is the polar of the vertex ``L_j cap L_k``."""
    p = Q.p
    if not Q.is_smooth():
        raise DegenerateInputError("singular conic")
    L = [L1, L2, L3]
    out = []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        v = cross(L[j], L[k], p)
        if not any(v):
            raise DegenerateInputError("two lines of the triangle coincide")
        out.append(normalize(linalg.matvec(Q.matrix, v, p), p))
    return tuple(out)


def quotient_coordinates(f: TernaryForm, q: TernaryForm):
    """Coordinates of ``f`` in ``Sym^2 / <q>``: eliminate the first nonzero slot of q."""
    p = q.p
    k = next(i for i, c in enumerate(q.coeffs) if c)
    s = f.coeffs[k] * inv_mod(q.coeffs[k], p) % p
    v = [(a - s * b) % p for a, b in zip(f.coeffs, q.coeffs)]
    return v[:k] + v[k + 1:]


def mu_triangle(L1, L2, L3, Q: Conic, param=None):
    """Image of the triangle in ``Gr(2, Sym^2 / <q>)``, as a reduced echelon basis."""
    p = Q.p
    param = param or Q.parametrization()
    L = [L1, L2, L3]
    if linalg.rank([list(x) for x in L], p) < 3:
        raise DegenerateInputError("the lines are concurrent")
    prods = []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        R = ram_line_of_pencil(L[j], L[k], Q, param)
        prods.append(linear(L[i], p) * linear(R, p))
    q = Q.form()
    if linalg.rank([list(f.coeffs) for f in prods] + [list(q.coeffs)], p) != linalg.rank(
            [list(f.coeffs) for f in prods], p):
        raise DegenerateInputError("the products do not span q")
    red, piv = linalg.rref([quotient_coordinates(f, q) for f in prods], p, 5)
    if len(piv) != 2:
        raise DegenerateInputError(f"image has dimension {len(piv)}, expected 2")
    return tuple(tuple(row) for row in red[:2])


def random_triangle(p, rng):
    while True:
        L = [tuple(rng.randrange(p) for _ in range(3)) for _ in range(3)]
        if linalg.rank([list(x) for x in L], p) == 3:
            return L
