"""Rank of the differential of the projection-ramification map.

The differential at a chart point ``A0`` is computed with dual numbers: the
frame is evaluated over ``F_p[eps]/(eps^2)`` at ``A0 + eps B`` and the
eps-part of the ramification coefficients is ``L(B)``. The projectivized rank
is ``rank([L | c(A0)]) - 1``, which quotients out the scaling direction.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from . import linalg
from .degree import _draw, chart_polynomials, chart_rows
from .ff import DEFAULT_PRIMES, check_prime
from .poly import MultiPoly, Ring, uadd, uderiv, umul, uscale, usub
from .scroll import RamEvaluator, as_partition

RECERTIFY_TRIALS = 5


class DualPoly:
    """``re + eps * du`` with univariate polynomial parts (ascending coefficient lists)."""

    __slots__ = ("re", "du", "p")

    def __init__(self, re, du, p):
        self.re, self.du, self.p = list(re), list(du), p

    def __add__(self, other):
        return DualPoly(uadd(self.re, other.re, self.p), uadd(self.du, other.du, self.p), self.p)

    def __sub__(self, other):
        return DualPoly(usub(self.re, other.re, self.p), usub(self.du, other.du, self.p), self.p)

    def __neg__(self):
        return DualPoly(uscale(self.re, -1, self.p), uscale(self.du, -1, self.p), self.p)

    def __mul__(self, other):
        p = self.p
        return DualPoly(umul(self.re, other.re, p),
                        uadd(umul(self.re, other.du, p), umul(self.du, other.re, p), p), p)

    def derivative(self):
        return DualPoly(uderiv(self.re, self.p), uderiv(self.du, self.p), self.p)

    @classmethod
    def zero(cls, p):
        return cls([], [], p)


def _det(m, zero):
    """Laplace expansion along rows, sharing minors over column subsets."""
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    # minors[S]: determinant of the first |S| rows restricted to the columns S
    minors = {0: None}
    for i in range(n):
        nxt = {}
        for S, d in minors.items():
            sign = 1
            for j in range(n - 1, -1, -1):
                if S >> j & 1:
                    sign = -sign
                    continue
                term = m[i][j] if d is None else d * m[i][j]
                if sign < 0:
                    term = -term
                T = S | (1 << j)
                nxt[T] = nxt[T] + term if T in nxt else term
        minors = nxt
    return minors[(1 << n) - 1] if n else zero


def dual_ram(rows, P, p):
    """Ramification coefficients of a frame with dual-polynomial entries.

    ``rows[i][j]`` is the ``DualPoly`` entry ``m_ij``. Returns the real and the
    eps parts as flat coefficient lists in the RamCoeffs layout.
    """
    r = P.r
    zero = DualPoly.zero(p)
    comps = [zero] * r
    for l in range(r + 1):
        minor = [row for i, row in enumerate(rows) if i != l]
        M = _det(minor, zero) if r else DualPoly([1], [], p)
        if (l + r) % 2:
            M = -M
        for j in range(r):
            comps[j] = comps[j] + M * rows[l][j].derivative()
    re, du = [], []
    for c, deg in zip(comps, P.ram_degrees):
        re.extend(c.re + [0] * (deg + 1 - len(c.re)))
        du.extend(c.du + [0] * (deg + 1 - len(c.du)))
    return re, du


def _dual_rows(P, vectors, tangents, p):
    rows = []
    for v, w in zip(vectors, tangents):
        row = []
        pos = 0
        for a in P.parts:
            row.append(DualPoly(v[pos:pos + a + 1], w[pos:pos + a + 1], p))
            pos += a + 1
        rows.append(row)
    return rows


def differential(P, spec, B):
    """``L(B)``: the eps-part of ``c(A0 + eps B)``."""
    p = spec.prime
    k, m = spec.k, spec.n - spec.k
    g = spec.g
    base = chart_rows(g, spec.A0, p)
    tangents = [[sum(B[i][c] * g[k + c][col] for c in range(m)) % p for col in range(spec.n)]
                for i in range(k)]
    re, du = dual_ram(_dual_rows(P, base, tangents, p), P, p)
    return re, du


def _draw_point(P, seed, p):
    P = as_partition(P)
    return _draw(("rank",) + P.parts, RamEvaluator(P, p), P.r + 1, P.d + P.r, p, seed)


def jacobian_rank(P, seed=0, p=DEFAULT_PRIMES[0]) -> int:
    """Rank of the projectivized differential at a random chart point."""
    P = as_partition(P)
    p = check_prime(p)
    spec = _draw_point(P, seed, p)
    k, m = spec.k, spec.n - spec.k
    cols = []
    for i in range(k):
        for c in range(m):
            B = [[0] * m for _ in range(k)]
            B[i][c] = 1
            cols.append(differential(P, spec, B)[1])
    cols.append(spec.R0)
    return linalg.rank(cols, p) - 1


@dataclass
class RankReport:
    partition: tuple
    dim_gr: int
    rank: int
    maximal_variation: bool
    trials: list = field(default_factory=list)

    def to_dict(self):
        return {"partition": list(self.partition), "dim_gr": self.dim_gr, "rank": self.rank,
                "maximal_variation": self.maximal_variation, "trials": self.trials}

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))


def is_maximal_variation(P, trials=3, seed=0, p=DEFAULT_PRIMES[0]) -> RankReport:
    """Verdict true iff the differential has full rank at some random point.

    A rank deficit can come from an unlucky point, so a negative verdict is
    re-checked with extra trials before it is reported.
    """
    P = as_partition(P)
    dim = P.chart_dim
    records = []
    best = -1

    def run(s):
        nonlocal best
        rk = jacobian_rank(P, s, p)
        records.append({"prime": p, "seed": s, "rank": rk})
        best = max(best, rk)

    for s in range(seed, seed + trials):
        run(s)
        if best == dim:
            break
    if best < dim:
        for s in range(seed + trials, seed + trials + RECERTIFY_TRIALS):
            run(s)
            if best == dim:
                break
    return RankReport(P.parts, dim, best, best == dim, records)


def dual_number_consistency(P, seed=0, p=DEFAULT_PRIMES[0], directions=10) -> bool:
    """Compare dual-number directional derivatives with symbolic partials."""
    P = as_partition(P)
    spec = _draw_point(P, seed, p)
    k, m = spec.k, spec.n - spec.k
    N = k * m
    ring = Ring([f"a{i}_{c}" for i in range(k) for c in range(m)], p)
    polys = [MultiPoly(ring, f) for f in chart_polynomials(RamEvaluator(P, p), spec.g, k, p)]
    point = [x for row in spec.A0 for x in row]
    grads = [[f.derivative(v).eval(point) for v in range(N)] for f in polys]
    rng = random.Random(f"consistency:{P.parts}:{p}:{seed}")

    def dual(flat):
        B = [flat[i * m:(i + 1) * m] for i in range(k)]
        return differential(P, spec, B)

    re0, du0 = dual([0] * N)
    if any(du0) or re0 != spec.R0:
        return False
    for _ in range(directions):
        flat = [rng.randrange(p) for _ in range(N)]
        _, du = dual(flat)
        symbolic = [sum(gr[v] * flat[v] for v in range(N)) % p for gr in grads]
        if du != symbolic:
            return False
        _, du2 = dual([2 * x % p for x in flat])
        if du2 != [2 * x % p for x in du]:
            return False
    return True
