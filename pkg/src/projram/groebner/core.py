"""Buchberger's algorithm over F_p.

Pairs are handled with the Gebauer-Moeller update, which applies the
coprime-leading-monomial criterion and the chain criterion, and are selected
by the normal strategy (smallest lcm first). Reduction work is delegated to
a kernel; see :mod:`projram.groebner.kernels`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..poly import MultiPoly, Ring
from .kernels import get_kernel
from .monomials import MonomialEncoding

DEFAULT_STEP_BUDGET = 10**7
DEFAULT_TIME_BUDGET = 300.0


class BudgetExceeded(RuntimeError):
    """A basis computation ran out of reduction steps or wall time."""

    def __init__(self, reason, steps, elapsed, basis_size, pairs_left):
        super().__init__(
            f"{reason} budget exhausted after {steps} reduction steps, "
            f"{elapsed:.1f}s, basis size {basis_size}, {pairs_left} pairs pending")
        self.reason = reason
        self.steps = steps
        self.elapsed = elapsed
        self.basis_size = basis_size
        self.pairs_left = pairs_left


class NotZeroDimensionalError(ValueError):
    pass


@dataclass(frozen=True)
class Budget:
    steps: int = DEFAULT_STEP_BUDGET
    seconds: float = DEFAULT_TIME_BUDGET

    def __post_init__(self):
        if self.steps <= 0 or self.seconds <= 0:
            raise ValueError("budgets must be positive")


def encoding_for(ring: Ring) -> MonomialEncoding:
    return MonomialEncoding(ring.nvars, ring.order.kind, ring.order.priority)


class Ideal:
    """Generators in a common ring; zero generators are dropped."""

    def __init__(self, generators, ring: Ring | None = None):
        gens = list(generators)
        if ring is None:
            if not gens:
                raise ValueError("need a ring for an ideal without generators")
            ring = gens[0].ring
        for g in gens:
            if g.ring.names != ring.names or g.ring.p != ring.p:
                raise ValueError("generators live in different rings")
            if any(len(e) != ring.nvars for e in g.terms):
                raise ValueError(f"a generator has monomials of the wrong arity for {ring.nvars} variables")
        self.ring = ring
        self.generators = [MultiPoly(ring, g.terms) for g in gens if not g.is_zero()]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


@dataclass
class GroebnerBasis:
    """Reduced, monic Groebner basis; ``elements`` sorted by leading monomial."""

    ring: Ring
    elements: list
    stats: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.elements]

    def __str__(self):
        return "\n".join(str(g) for g in self.elements)


class _Context:
    """Converts between MultiPoly and kernel polynomials for one ring."""

    def __init__(self, ring: Ring, kernel=None):
        self.ring = ring
        self.enc = encoding_for(ring)
        self.k = get_kernel(kernel)(self.enc, ring.p)

    def to_kernel(self, f: MultiPoly):
        enc = self.enc
        items = sorted(((enc.encode(e), c) for e, c in f.terms.items()), reverse=True)
        return self.k.from_terms([k for k, _ in items], [c for _, c in items])

    def from_kernel(self, g) -> MultiPoly:
        keys, cs = self.k.to_terms(g)
        dec = self.enc.decode
        return MultiPoly(self.ring, {dec(k): c for k, c in zip(keys, cs)})


def _interreduce(ctx, basis):
    """Make a minimal monic basis fully reduced."""
    k = ctx.k
    basis = sorted(basis, key=k.lead)
    out = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1:]
        out.append(k.monic(k.reduce(g, others, full=True)))
    return sorted(out, key=k.lead, reverse=True)


def buchberger(I: Ideal, budget: Budget | None = None, kernel=None) -> GroebnerBasis:
    """Reduced Groebner basis of ``I`` in the order of its ring."""
    budget = budget or Budget()
    ring = I.ring
    ctx = _Context(ring, kernel)
    k, enc = ctx.k, ctx.enc
    start = time.perf_counter()
    k.steps = 0

    polys = []  # every basis element ever created, referenced by index
    pairs = k.pair_set()
    stats = {"pairs_processed": 0, "zero_reductions": 0}

    def check_budget():
        elapsed = time.perf_counter() - start
        reason = None
        if k.steps > budget.steps:
            reason = "step"
        elif elapsed > budget.seconds:
            reason = "time"
        if reason:
            raise BudgetExceeded(reason, k.steps, elapsed, len(pairs.active), len(pairs))

    def reduce(f):
        out = k.reduce(f, [polys[i] for i in pairs.active], True, budget.steps - k.steps + 1)
        if out is None:
            check_budget()
            raise BudgetExceeded("step", k.steps, time.perf_counter() - start,
                                 len(pairs.active), len(pairs))
        return out

    def add(h):
        polys.append(h)
        pairs.update(k.lead(h))

    unit = False
    for f in I.generators:
        h = reduce(ctx.to_kernel(f))
        if k.nterms(h):
            add(k.monic(h))
            unit = k.lead(h) == enc.one
        check_budget()
        if unit:
            break

    while pairs and not unit:
        lcm_ij, i, j = pairs.pop()
        s = k.spoly(polys[i], polys[j], lcm_ij)
        stats["pairs_processed"] += 1
        h = reduce(s) if k.nterms(s) else s
        if k.nterms(h):
            add(k.monic(h))
            unit = k.lead(h) == enc.one
        else:
            stats["zero_reductions"] += 1
        check_budget()

    stats["pairs_pruned"] = pairs.pruned
    active = pairs.active
    basis = [polys[i] for i in active]
    if any(k.lead(g) == enc.one for g in basis):
        basis = [k.from_terms([enc.one], [1])]
    else:
        basis = _interreduce(ctx, basis)
    stats.update(steps=k.steps, seconds=time.perf_counter() - start,
                 kernel=k.name, size=len(basis))
    return GroebnerBasis(ring, [ctx.from_kernel(g) for g in basis], stats)


def normal_form(f: MultiPoly, G, kernel=None) -> MultiPoly:
    """Remainder of ``f`` on division by ``G`` (a GroebnerBasis or list of polynomials)."""
    elements = list(G.elements if isinstance(G, GroebnerBasis) else G)
    ring = G.ring if isinstance(G, GroebnerBasis) else f.ring
    if f.ring.names != ring.names or f.ring.p != ring.p:
        raise ValueError("polynomial and basis live in different rings")
    ctx = _Context(ring, kernel)
    basis = [ctx.k.monic(ctx.to_kernel(g)) for g in elements if not g.is_zero()]
    return ctx.from_kernel(ctx.k.reduce(ctx.to_kernel(f), basis, True, None))


def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    ring = f.ring
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = tuple(a - b for a, b in zip(lcm, lf))
    mg = tuple(a - b for a, b in zip(lcm, lg))
    from ..ff import inv_mod
    p = ring.p
    return (f.mul_term(mf, inv_mod(f.terms[lf], p))
            - g.mul_term(mg, inv_mod(g.terms[lg], p)))


def _pure_power_bounds(G: GroebnerBasis):
    n = G.ring.nvars
    bounds = [None] * n
    for m in G.leading_monomials():
        nz = [i for i, e in enumerate(m) if e]
        if not nz:
            return "unit"
        if len(nz) == 1:
            i = nz[0]
            if bounds[i] is None or m[i] < bounds[i]:
                bounds[i] = m[i]
    return bounds


def is_zero_dimensional(G: GroebnerBasis) -> bool:
    """True iff every variable has a pure power among the leading monomials."""
    b = _pure_power_bounds(G)
    return b == "unit" or all(x is not None for x in b)


def standard_monomials(G: GroebnerBasis):
    """Monomials divisible by no leading monomial of a zero-dimensional basis."""
    b = _pure_power_bounds(G)
    if b == "unit":
        return []
    if any(x is None for x in b):
        raise NotZeroDimensionalError("ideal is not zero-dimensional")
    n = G.ring.nvars
    lms = G.leading_monomials()
    out = []

    def blocked(prefix, i):
        # a leading monomial supported on the first i+1 variables divides prefix
        for m in lms:
            if all(m[j] <= prefix[j] for j in range(i + 1)) and not any(m[i + 1:]):
                return True
        return False

    prefix = [0] * n

    def rec(i):
        if i == n:
            out.append(tuple(prefix))
            return
        for e in range(b[i]):
            prefix[i] = e
            if blocked(prefix, i):
                break
            rec(i + 1)
        prefix[i] = 0

    rec(0)
    return out


def quotient_dimension(G: GroebnerBasis) -> int:
    """Vector-space dimension of the quotient ring (number of standard monomials)."""
    return len(standard_monomials(G))
