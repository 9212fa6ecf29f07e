"""Polynomials over F_p.

``UniPoly`` is a dense univariate polynomial in ``t`` (ascending
coefficients); ``MultiPoly`` is a sparse multivariate polynomial whose terms
are kept in a ``{exponent tuple: residue}`` dict and listed in descending
order of its ring's monomial order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .ff import FieldElement, check_prime, inv_mod


class RingMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# univariate


def _trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return c[:n]


def uadd(f, g, p):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, b in enumerate(g):
        out[i] = (out[i] + b) % p
    return _trim(out)


def usub(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, a in enumerate(f):
        out[i] = a
    for i, b in enumerate(g):
        out[i] = (out[i] - b) % p
    return _trim(out)


def umul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim([x % p for x in out])


def uscale(f, c, p):
    c %= p
    return _trim([a * c % p for a in f]) if c else []


def uderiv(f, p):
    return _trim([(k * f[k]) % p for k in range(1, len(f))])


def ueval(f, x, p):
    acc = 0
    for a in reversed(f):
        acc = (acc * x + a) % p
    return acc


def ushift(f, c, p):
    """Coefficients of ``f(t + c)``."""
    out = []
    for a in reversed(f):
        # Horner: out = out * (t + c) + a
        nxt = [0] * (len(out) + 1)
        for i, b in enumerate(out):
            nxt[i] = (nxt[i] + b * c) % p
            nxt[i + 1] = (nxt[i + 1] + b) % p
        nxt[0] = (nxt[0] + a) % p
        out = nxt
    return _trim(out)


@dataclass(frozen=True)
class UniPoly:
    """Dense polynomial in ``t`` over F_p; ``coeffs[k]`` is the t^k coefficient."""

    coeffs: tuple
    p: int

    def __init__(self, coeffs, p):
        p = check_prime(p)
        c = tuple(_trim([int(x) % p for x in coeffs]))
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "p", p)

    @classmethod
    def _raw(cls, c, p):
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(c))
        object.__setattr__(obj, "p", p)
        return obj

    @classmethod
    def monomial(cls, k, p, c=1):
        return cls([0] * k + [c], p)

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _other(self, g):
        if isinstance(g, UniPoly):
            if g.p != self.p:
                raise RingMismatchError(f"F_{self.p}[t] vs F_{g.p}[t]")
            return g.coeffs
        if isinstance(g, (int, FieldElement)):
            return _trim([int(g) % self.p])
        return NotImplemented

    def __add__(self, g):
        o = self._other(g)
        if o is NotImplemented:
            return o
        return UniPoly._raw(uadd(self.coeffs, o, self.p), self.p)

    __radd__ = __add__

    def __sub__(self, g):
        o = self._other(g)
        if o is NotImplemented:
            return o
        return UniPoly._raw(usub(self.coeffs, o, self.p), self.p)

    def __rsub__(self, g):
        o = self._other(g)
        if o is NotImplemented:
            return o
        return UniPoly._raw(usub(o, self.coeffs, self.p), self.p)

    def __mul__(self, g):
        o = self._other(g)
        if o is NotImplemented:
            return o
        return UniPoly._raw(umul(self.coeffs, o, self.p), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return UniPoly._raw([-a % self.p for a in self.coeffs], self.p)

    def __call__(self, x) -> int:
        return ueval(self.coeffs, int(x), self.p)

    def derivative(self) -> "UniPoly":
        return UniPoly._raw(uderiv(self.coeffs, self.p), self.p)

    def shift(self, c) -> "UniPoly":
        """``f(t + c)``."""
        return UniPoly._raw(ushift(self.coeffs, int(c) % self.p, self.p), self.p)

    def coeff(self, k) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def padded(self, n) -> list:
        if len(self.coeffs) > n:
            raise ValueError(f"degree {self.degree} does not fit in {n} slots")
        return list(self.coeffs) + [0] * (n - len(self.coeffs))

    def __str__(self):
        return "0" if not self.coeffs else format_terms(
            [((k,), c) for k, c in reversed(list(enumerate(self.coeffs))) if c], ("t",))


def derivative(f: UniPoly) -> UniPoly:
    return f.derivative()


# ---------------------------------------------------------------------------
# multivariate


@dataclass(frozen=True)
class MonomialOrder:
    """``degrevlex`` or ``lex`` with variables ranked by ``priority``.

    ``priority`` lists variable indices from most to least significant;
    ``None`` means declaration order.
    """

    kind: str = "degrevlex"
    priority: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, exps):
        if self.priority is not None:
            exps = tuple(exps[i] for i in self.priority)
        if self.kind == "lex":
            return tuple(exps)
        return (sum(exps), tuple(-e for e in reversed(exps)))


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


@dataclass(frozen=True)
class Ring:
    names: tuple
    p: int
    order: MonomialOrder = DEGREVLEX

    def __init__(self, names, p, order=DEGREVLEX):
        if isinstance(names, str):
            names = tuple(names.replace(",", " ").split())
        object.__setattr__(self, "names", tuple(names))
        object.__setattr__(self, "p", check_prime(p))
        if isinstance(order, str):
            order = MonomialOrder(order)
        object.__setattr__(self, "order", order)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def var(self, i):
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): 1})

    def const(self, c):
        c %= self.p
        return MultiPoly(self, {(0,) * self.nvars: c} if c else {})

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return self.const(1)

    def from_terms(self, terms):
        """Build from an iterable of ``(exponent tuple, coeff)``; repeats are summed."""
        d = {}
        p = self.p
        for e, c in terms:
            e = tuple(e)
            if len(e) != self.nvars:
                raise RingMismatchError(f"monomial {e} has wrong arity for {self.nvars} variables")
            d[e] = (d.get(e, 0) + int(c)) % p
        return MultiPoly(self, {e: c for e, c in d.items() if c})

    def with_order(self, order):
        return Ring(self.names, self.p, order)

    def parse(self, text):
        return parse_poly(self, text)


class MultiPoly:
    """Sparse polynomial; ``terms`` maps exponent tuples to nonzero residues."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- structure
    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.ring.names != self.ring.names or other.ring.p != self.ring.p:
                raise RingMismatchError("polynomials live in different rings")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.const(int(other))
        return NotImplemented

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]), reverse=True)

    def leading_monomial(self):
        if not self.terms:
            return None
        key = self.ring.order.key
        return max(self.terms, key=key)

    def leading_coefficient(self):
        lm = self.leading_monomial()
        return 0 if lm is None else self.terms[lm]

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i):
        if isinstance(i, str):
            i = self.ring.names.index(i)
        return max((e[i] for e in self.terms), default=-1)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    # -- arithmetic
    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        p = self.ring.p
        d = dict(self.terms)
        for e, c in o.terms.items():
            v = (d.get(e, 0) + c) % p
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return MultiPoly(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return MultiPoly(self.ring, {e: -c % p for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        p = self.ring.p
        if len(o.terms) == 1:
            (e2, c2), = o.terms.items()
            return MultiPoly(self.ring, {tuple(a + b for a, b in zip(e1, e2)): c1 * c2 % p
                                         for e1, c1 in self.terms.items()})
        d = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return MultiPoly(self.ring, {e: c % p for e, c in d.items() if c % p})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return MultiPoly(self.ring, {e: v * c % p for e, v in self.terms.items()})

    def monic(self):
        lc = self.leading_coefficient()
        return self.scale(inv_mod(lc, self.ring.p)) if lc else self

    def mul_term(self, exps, c):
        p = self.ring.p
        return MultiPoly(self.ring, {tuple(a + b for a, b in zip(e, exps)): v * c % p
                                     for e, v in self.terms.items()})

    def derivative(self, i):
        if isinstance(i, str):
            i = self.ring.names.index(i)
        p = self.ring.p
        d = {}
        for e, c in self.terms.items():
            if e[i] and (e[i] * c) % p:
                ne = list(e)
                ne[i] -= 1
                d[tuple(ne)] = e[i] * c % p
        return MultiPoly(self.ring, d)

    def eval(self, values):
        """Evaluate at a point given as a sequence or ``{name or index: value}``."""
        vals = self._assignment(values, total=True)
        p = self.ring.p
        acc = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term = term * pow(v, k, p) % p
            acc += term
        return acc % p

    def _assignment(self, values, total):
        n = self.ring.nvars
        if isinstance(values, dict):
            out = [None] * n
            for k, v in values.items():
                i = self.ring.names.index(k) if isinstance(k, str) else k
                out[i] = v
            if total and any(v is None for v in out):
                raise RingMismatchError("evaluation point misses variables")
            return out
        values = list(values)
        if len(values) != n:
            raise RingMismatchError(f"expected {n} values, got {len(values)}")
        return values

    def substitute(self, values):
        """Replace variables by polynomials or constants.

        ``values`` maps variable names/indices to ``MultiPoly`` or ints;
        unmapped variables are kept.
        """
        ring = self.ring
        subs = self._assignment(values, total=False)
        imgs = []
        for i, v in enumerate(subs):
            if v is None:
                imgs.append(ring.var(i))
            elif isinstance(v, MultiPoly):
                imgs.append(v)
            else:
                imgs.append(ring.const(int(v)))
        out = ring.zero()
        cache = {}
        for e, c in self.terms.items():
            term = ring.const(c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = imgs[i] ** k
                    term = term * cache[key]
            out = out + term
        return out

    def shift(self, var, c):
        """Substitute ``var -> var + c``."""
        x = self.ring.var(var)
        return self.substitute({var: x + c})

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        return format_terms(self.sorted_terms(), self.ring.names)


def format_terms(terms, names) -> str:
    """Canonical text: descending terms joined by `` + ``, residues in ``[0, p)``."""
    if not terms:
        return "0"
    parts = []
    for e, c in terms:
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)


def parse_poly(ring: Ring, text: str) -> MultiPoly:
    """Parse the canonical text form (and ``-``-separated variants)."""
    text = text.replace(" ", "").replace("-", "+-")
    out = ring.zero()
    index = {n: i for i, n in enumerate(ring.names)}
    for chunk in text.split("+"):
        if not chunk:
            continue
        sign = 1
        if chunk.startswith("-"):
            sign, chunk = -1, chunk[1:]
        coeff = 1
        e = [0] * ring.nvars
        for factor in chunk.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, k = factor.partition("^")
            if name not in index:
                raise ValueError(f"unknown variable {name!r}")
            e[index[name]] += int(k) if k else 1
        out = out + ring.from_terms([(e, sign * coeff)])
    return out


# ---------------------------------------------------------------------------
# determinants


def _leibniz(m, one):
    n = len(m)
    total = None
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = one
        for i, j in enumerate(perm):
            term = term * m[i][j]
        term = -term if inv % 2 else term
        total = term if total is None else total + term
    return total


def _cofactor(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else m[0][0] - m[0][0]


def _berkowitz(m, ring):
    """Division-free determinant via Berkowitz's characteristic polynomial recursion."""
    n = len(m)
    zero = ring.zero()
    # characteristic-polynomial coefficient vector of the leading 1x1 block
    vect = [ring.one(), -m[0][0]]
    for k in range(1, n):
        # block [[A, col], [row, a]] with A the leading k x k submatrix
        col = [m[i][k] for i in range(k)]
        row = [m[k][j] for j in range(k)]
        a = m[k][k]
        # Toeplitz column: 1, -a, -row*col, -row*A*col, ...
        t = [ring.one(), -a]
        v = col
        for _ in range(k):
            s = zero
            for x, y in zip(row, v):
                s = s + x * y
            t.append(-s)
            v = [sum((m[i][j] * v[j] for j in range(k)), zero) for i in range(k)]
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(min(i, k) + 1):
                s = s + t[i - j] * vect[j]
            new.append(s)
        vect = new
    det = vect[n]
    return -det if n % 2 else det


CofactorCutoff = 5


def det_poly_matrix(m):
    """Exact determinant of a square matrix of ``MultiPoly``.

    Cofactor expansion up to 5x5, Berkowitz's division-free algorithm above.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if n == 0:
        raise ValueError("empty matrix")
    ring = m[0][0].ring
    if n <= CofactorCutoff:
        return _cofactor(m)
    return _berkowitz(m, ring)


def leibniz_det(m):
    """Reference determinant by the n!-term permutation sum."""
    return _leibniz(m, m[0][0].ring.one())
