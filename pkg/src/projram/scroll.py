"""Rational normal scrolls P(O(a_1) + ... + O(a_r)) over the chart Spec k[t].

A section of E = O(a_1) + ... + O(a_r) is a tuple of r polynomials
``(f_1, ..., f_r)`` with ``deg f_j <= a_j``; it stands for
``f_1 X_1 + ... + f_r X_r``. Coordinate vectors of H^0(E) list the
coefficients summand by summand in ascending degree.

The ramification section of a projection spanned by ``r + 1`` sections is
a tuple ``(c_1, ..., c_r)`` with ``deg c_j <= a_j + d - 2``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from . import linalg
from .ff import check_prime
from .poly import (
    Ring,
    UniPoly,
    det_poly_matrix,
    uadd,
    uderiv,
    umul,
    uscale,
    usub,
)


class DegenerateDrawError(RuntimeError):
    """Random draws kept landing on a special locus."""


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __init__(self, parts):
        if isinstance(parts, str):
            try:
                parts = [int(x) for x in parts.replace(" ", "").split(",") if x]
            except ValueError as exc:
                raise ValueError(f"malformed partition {parts!r}") from exc
        parts = tuple(int(a) for a in parts)
        if not parts:
            raise ValueError("partition needs at least one part")
        if any(a < 1 for a in parts):
            raise ValueError(f"parts must be >= 1 (ample bundle), got {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts)))

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def d(self) -> int:
        return sum(self.parts)

    @property
    def ram_degrees(self):
        """Maximal degree of each ramification component, ``a_j + d - 2``."""
        return tuple(a + self.d - 2 for a in self.parts)

    @property
    def ram_length(self) -> int:
        """Number of serialized ramification coefficients, ``rd + d - r``."""
        return sum(a + self.d - 1 for a in self.parts)

    @property
    def chart_dim(self) -> int:
        return (self.r + 1) * (self.d - 1)

    def __str__(self):
        return ",".join(map(str, self.parts))


def as_partition(P) -> Partition:
    return P if isinstance(P, Partition) else Partition(P)


# ---------------------------------------------------------------------------
# bookkeeping


def h0_dim(P) -> int:
    P = as_partition(P)
    return P.d + P.r


def dims_match(P):
    """``(dim Gr(r+1, H^0 E), dim of the target linear system)``; always equal."""
    P = as_partition(P)
    r, d = P.r, P.d
    dim_gr = (r + 1) * (d - 1)
    dim_target = r * d + d - r - 1
    assert dim_gr == dim_target, (P, dim_gr, dim_target)
    return dim_gr, dim_target


def kymh_lower_bound(n: int, r: int, m: int) -> int:
    """``C(m, r)(n - r) + C(m - 1, r)``."""
    if not (m >= r >= 1 and n > r):
        raise ValueError("need m >= r >= 1 and n > r")
    return comb(m, r) * (n - r) + comb(m - 1, r)


def requirement_holds(a: int, b: int, r: int) -> bool:
    """``(r - 1)(b - a + 1) >= b + d - 1`` with ``d = (r - 1)a + b``."""
    if not (0 < a < b and r >= 2):
        raise ValueError("need 0 < a < b and r >= 2")
    d = (r - 1) * a + b
    return (r - 1) * (b - a + 1) >= b + d - 1


# ---------------------------------------------------------------------------
# sections and coordinates


def section_to_vector(section, P):
    P = as_partition(P)
    out = []
    for f, a in zip(section, P.parts):
        c = f.coeffs if isinstance(f, UniPoly) else f
        if len(c) > a + 1:
            raise ValueError(f"component of degree {len(c) - 1} exceeds bound {a}")
        out.extend(list(c) + [0] * (a + 1 - len(c)))
    return out


def vector_to_section(vec, P, p):
    P = as_partition(P)
    out, pos = [], 0
    for a in P.parts:
        out.append(UniPoly(vec[pos:pos + a + 1], p))
        pos += a + 1
    return tuple(out)


def check_frame(F, P):
    P = as_partition(P)
    if len(F) != P.r + 1:
        raise ValueError(f"frame needs {P.r + 1} sections, got {len(F)}")
    for s in F:
        if len(s) != P.r:
            raise ValueError(f"section needs {P.r} components")
        for f, a in zip(s, P.parts):
            if f.degree > a:
                raise ValueError(f"section component of degree {f.degree} exceeds bound {a}")


def random_section(P, p, rng):
    P = as_partition(P)
    return tuple(UniPoly([rng.randrange(p) for _ in range(a + 1)], p) for a in P.parts)


def random_frame(P, p, rng):
    P = as_partition(P)
    return [random_section(P, p, rng) for _ in range(P.r + 1)]


@dataclass(frozen=True)
class RamCoeffs:
    """Ramification section ``(c_1, ..., c_r)`` together with its partition."""

    components: tuple
    partition: Partition

    @property
    def p(self):
        return self.components[0].p

    def to_list(self):
        """Bit-exact layout: each ``c_j`` as ``a_j + d - 1`` ascending coefficients."""
        out = []
        for c, deg in zip(self.components, self.partition.ram_degrees):
            out.extend(c.padded(deg + 1))
        return out

    @classmethod
    def from_list(cls, values, P, p):
        P = as_partition(P)
        values = list(values)
        if len(values) != P.ram_length:
            raise ValueError(f"expected {P.ram_length} coefficients, got {len(values)}")
        comps, pos = [], 0
        for deg in P.ram_degrees:
            comps.append(UniPoly(values[pos:pos + deg + 1], p))
            pos += deg + 1
        return cls(tuple(comps), P)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def __neg__(self):
        return RamCoeffs(tuple(-c for c in self.components), self.partition)

    def scale(self, s):
        return RamCoeffs(tuple(c * s for c in self.components), self.partition)

    def shift(self, c):
        return RamCoeffs(tuple(x.shift(c) for x in self.components), self.partition)


# ---------------------------------------------------------------------------
# ramification: determinant route


def ram_determinant(F, P) -> RamCoeffs:
    """Ramification section as the determinant of the (r+1)x(r+1) matrix.

    The first r columns hold the frame entries ``m_ij(t)``; the last column
    holds ``sum_j m_ij'(t) X_j``. The determinant is expanded symbolically in
    F_p[t, X_1..X_r] and the coefficient of each ``X_j`` is read off.
    """
    P = as_partition(P)
    check_frame(F, P)
    p = F[0][0].p
    r = P.r
    ring = Ring(["t"] + [f"X{j + 1}" for j in range(r)], p)
    t = ring.var(0)
    xs = [ring.var(j + 1) for j in range(r)]

    def lift(f):
        return ring.from_terms(((k,) + (0,) * r, c) for k, c in enumerate(f.coeffs) if c)

    mat = []
    for s in F:
        row = [lift(f) for f in s]
        last = ring.zero()
        for f, x in zip(s, xs):
            last = last + lift(f.derivative()) * x
        mat.append(row + [last])
    det = det_poly_matrix(mat)
    comps = []
    for j in range(r):
        key = [0] * r
        key[j] = 1
        coeffs = {}
        for e, c in det.terms.items():
            if tuple(e[1:]) == tuple(key):
                coeffs[e[0]] = c
            elif sum(e[1:]) != 1:
                raise AssertionError("determinant is not linear in X")
        n = max(coeffs, default=-1) + 1
        comps.append(UniPoly([coeffs.get(k, 0) for k in range(n)], p))
    del t
    return _checked(RamCoeffs(tuple(comps), P))


def _checked(R: RamCoeffs) -> RamCoeffs:
    for c, deg in zip(R.components, R.partition.ram_degrees):
        if c.degree > deg:
            raise AssertionError(f"ramification component of degree {c.degree} exceeds {deg}")
    return R


# ---------------------------------------------------------------------------
# ramification: differential route (raw coefficient lists)


def _udet(m, p):
    n = len(m)
    if n == 1:
        return list(m[0][0])
    if n == 2:
        return usub(umul(m[0][0], m[1][1], p), umul(m[0][1], m[1][0], p), p)
    total = []
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = umul(m[0][j], _udet(minor, p), p)
        total = usub(total, term, p) if j % 2 else uadd(total, term, p)
    return total


def signed_minors(rows, p):
    """``M_l = (-1)^(l + r) det(m_ij | i != l)`` for an (r+1) x r matrix of coefficient lists.

    The extra ``(-1)^r`` makes ``sum_l M_l m_lj'`` the cofactor expansion of
    the ramification determinant along its last column.
    """
    r = len(rows) - 1
    out = []
    for l in range(r + 1):
        minor = [row for i, row in enumerate(rows) if i != l]
        m = _udet(minor, p) if r else [1]
        out.append(m if (l + r) % 2 == 0 else uscale(m, -1, p))
    return out


def ram_lists(rows, p):
    """Differential construction on raw rows; ``rows[i][j]`` is the coefficient list of m_ij."""
    minors = signed_minors(rows, p)
    r = len(rows) - 1
    comps = []
    for j in range(r):
        acc = []
        for M, row in zip(minors, rows):
            if M and row[j]:
                acc = uadd(acc, umul(M, uderiv(row[j], p), p), p)
        comps.append(acc)
    return comps


def ram_differential(F, P) -> RamCoeffs:
    """Ramification section from the signed r x r minors paired with t-derivatives."""
    P = as_partition(P)
    check_frame(F, P)
    p = F[0][0].p
    rows = [[list(f.coeffs) for f in s] for s in F]
    comps = ram_lists(rows, p)
    return _checked(RamCoeffs(tuple(UniPoly._raw(c, p) for c in comps), P))


class RamEvaluator:
    """Ramification coefficients of frames given as coordinate vectors of H^0(E)."""

    def __init__(self, P, p):
        self.P = as_partition(P)
        self.p = check_prime(p)
        self._slices = []
        pos = 0
        for a in self.P.parts:
            self._slices.append((pos, pos + a + 1))
            pos += a + 1

    def rows(self, vectors):
        out = []
        for v in vectors:
            row = []
            for lo, hi in self._slices:
                c = list(v[lo:hi])
                while c and not c[-1]:
                    c.pop()
                row.append(c)
            out.append(row)
        return out

    def __call__(self, vectors):
        comps = ram_lists(self.rows(vectors), self.p)
        out = []
        for c, deg in zip(comps, self.P.ram_degrees):
            out.extend(c + [0] * (deg + 1 - len(c)))
        return out


# ---------------------------------------------------------------------------
# closed forms


def wronskian(f: UniPoly, g: UniPoly) -> UniPoly:
    """``f g' - f' g``."""
    return f * g.derivative() - f.derivative() * g


THREEFOLD_SIGN = -1
"""``ram_determinant`` of the eccentric threefold frame equals this sign times
``ram_threefold_closed``."""


def threefold_frame(a, b, c, d):
    """Frame ``{X1 + aX3, X2 + bX3, tX1 + cX3, tX2 + dX3}`` of O(1)+O(1)+O(k+1)."""
    p = a.p
    one, zero, t = UniPoly([1], p), UniPoly([], p), UniPoly([0, 1], p)
    return [(one, zero, a), (zero, one, b), (t, zero, c), (zero, t, d)]


def ram_threefold_closed(a, b, c, d, k: int) -> RamCoeffs:
    """``(alpha, beta, gamma)`` with ``alpha = d - bt``, ``beta = at - c`` and
    ``gamma = alpha' beta - beta' alpha + alpha a + beta b``."""
    for f in (a, b, c, d):
        if f.degree > k + 1:
            raise ValueError(f"polynomial degree {f.degree} exceeds k + 1 = {k + 1}")
    p = a.p
    t = UniPoly([0, 1], p)
    alpha = d - b * t
    beta = a * t - c
    gamma = alpha.derivative() * beta - beta.derivative() * alpha + alpha * a + beta * b
    return RamCoeffs((alpha, beta, gamma), Partition((1, 1, k + 1)))


# ---------------------------------------------------------------------------
# stabilizers


def _endomorphism_blocks(parts):
    """``(i, j, deg)`` for every nonzero block Hom(O(a_i), O(a_j)) = H^0(O(a_j - a_i))."""
    return [(i, j, parts[j] - parts[i]) for i in range(len(parts))
            for j in range(len(parts)) if parts[j] >= parts[i]]


def _endo_action_columns(parts, vec_degrees, vectors, p):
    """Columns of the linear map deltaM -> (deltaM v for v in vectors).

    ``vectors`` are sections with component degree bounds ``vec_degrees``;
    the output stacks all images in coordinates.
    """
    offsets, pos = [], 0
    for deg in vec_degrees:
        offsets.append(pos)
        pos += deg + 1
    total = pos
    cols = []
    for i, j, deg in _endomorphism_blocks(parts):
        for e in range(deg + 1):
            # basis endomorphism: t^e from summand i into summand j
            col = []
            for v in vectors:
                img = [0] * total
                src = v[i]
                for k, c in enumerate(src):
                    if c:
                        img[offsets[j] + k + e] = (img[offsets[j] + k + e] + c) % p
                col.extend(img)
            cols.append(col)
    return cols, total


def stabilizer_dim_target(P, seed=0, p=32003, retries=3) -> int:
    """Dimension of the stabilizer in Aut(PE/P^1) of a random ramification section.

    Solves ``deltaM v = c v`` over F_p and subtracts the scalar direction;
    the minimum over ``retries`` independent draws is returned.
    """
    P = as_partition(P)
    p = check_prime(p)
    best = None
    for attempt in range(retries):
        rng = random.Random(f"stab-target:{P}:{seed}:{attempt}")
        v = [[rng.randrange(p) for _ in range(deg + 1)] for deg in P.ram_degrees]
        cols, _ = _endo_action_columns(P.parts, P.ram_degrees, [v], p)
        flat_v = [x for comp in v for x in comp]
        cols.append([-x % p for x in flat_v])
        rows = [list(r) for r in zip(*cols)]
        dim = len(cols) - linalg.rank(rows, p) - 1
        best = dim if best is None else min(best, dim)
    if best < 0:
        raise DegenerateDrawError("scalar endomorphisms failed to stabilize the section")
    return best


def stabilizer_dim_source(P, seed=0, p=32003, retries=3) -> int:
    """Dimension of the stabilizer in Aut(PE/P^1) of a random (r+1)-plane in H^0(E)."""
    P = as_partition(P)
    p = check_prime(p)
    n = h0_dim(P)
    best = None
    for attempt in range(retries):
        rng = random.Random(f"stab-source:{P}:{seed}:{attempt}")
        while True:
            vecs = [[rng.randrange(p) for _ in range(n)] for _ in range(P.r + 1)]
            if linalg.rank(vecs, p) == P.r + 1:
                break
        basis = [vector_to_section(v, P, p) for v in vecs]
        secs = [[list(f.coeffs) for f in s] for s in basis]
        cols, total = _endo_action_columns(P.parts, P.parts, secs, p)
        nendo = len(cols)
        # unknown coefficients x_ik with deltaM v_i = sum_k x_ik v_k
        m = P.r + 1
        for i in range(m):
            for k in range(m):
                col = [0] * (total * m)
                for pos, x in enumerate(vecs[k]):
                    col[i * total + pos] = -x % p
                cols.append(col)
        rows = [list(r) for r in zip(*cols)]
        dim = len(cols) - linalg.rank(rows, p) - 1
        if dim > nendo:
            raise DegenerateDrawError("inconsistent stabilizer system")
        best = dim if best is None else min(best, dim)
    if best < 0:
        raise DegenerateDrawError("scalar endomorphisms failed to stabilize the plane")
    return best
