"""Pieri multiplication by sigma_1 in the cohomology of Gr(k, n)."""

from __future__ import annotations

from collections import Counter
from math import factorial


class SchubertCycle:
    """Integer combination of Schubert classes indexed by partitions in a k x (n-k) box."""

    def __init__(self, k: int, n: int, coefficients=None):
        if not 1 <= k < n:
            raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
        self.k, self.n = k, n
        self.coefficients = Counter()
        for lam, c in (coefficients or {}).items():
            lam = _normalize(lam)
            if not self.fits(lam):
                raise ValueError(f"{lam} does not fit in the {k}x{n - k} box")
            if c:
                self.coefficients[lam] += c

    @classmethod
    def point(cls, k, n):
        return cls(k, n, {(): 1})

    def fits(self, lam) -> bool:
        return len(lam) <= self.k and all(part <= self.n - self.k for part in lam)

    @property
    def full_box(self):
        return (self.n - self.k,) * self.k

    def __getitem__(self, lam):
        return self.coefficients.get(_normalize(lam), 0)

    def __eq__(self, other):
        return (isinstance(other, SchubertCycle) and (self.k, self.n) == (other.k, other.n)
                and +self.coefficients == +other.coefficients)

    def __repr__(self):
        body = " + ".join(f"{c}*s{list(lam)}" for lam, c in sorted(self.coefficients.items()))
        return f"SchubertCycle(Gr({self.k},{self.n}): {body or '0'})"


def _normalize(lam):
    return tuple(x for x in lam if x)


def addable(lam, k, width):
    """Partitions obtained from lam by adding one box inside the box."""
    lam = list(lam) + [0] * (k - len(lam))
    out = []
    for i in range(k):
        if lam[i] < width and (i == 0 or lam[i - 1] > lam[i]):
            mu = lam[:]
            mu[i] += 1
            out.append(_normalize(mu))
    return out


def pieri_sigma1(c: SchubertCycle, k=None, n=None) -> SchubertCycle:
    k = c.k if k is None else k
    n = c.n if n is None else n
    if (k, n) != (c.k, c.n):
        raise ValueError("cycle lives in a different Grassmannian")
    out = Counter()
    for lam, coef in c.coefficients.items():
        for mu in addable(lam, k, n - k):
            out[mu] += coef
    return SchubertCycle(k, n, out)


def plucker_degree(k: int, n: int) -> int:
    """``sigma_1^{k(n-k)}`` on Gr(k, n): the degree in the Pluecker embedding."""
    c = SchubertCycle.point(k, n)
    for _ in range(k * (n - k)):
        c = pieri_sigma1(c)
    return c[c.full_box]


def catalan_closed(n: int) -> int:
    """``(2n-2)! / (n! (n-1)!)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return factorial(2 * n - 2) // (factorial(n) * factorial(n - 1))
