"""Degree of the projection-ramification map by random-fiber counting.

A point of the Grassmannian is written in a random affine cell
``V(A) = rowspan([I | A] g)``. The ramification coefficients ``c(A)`` are
polynomials in the entries of A, and the fiber over a target ``R0 = c(A0)`` is
cut out by ``c(A) - lam R0`` together with ``lam u - 1``. Counting the
standard monomials of a Groebner basis gives the number of fiber points in
the cell; a consensus over several random cells and primes gives the degree.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field

from . import linalg
from .ff import DEFAULT_PRIMES, check_prime
from .groebner import (
    Budget,
    BudgetExceeded,
    Ideal,
    buchberger,
    is_zero_dimensional,
    quotient_dimension,
)
from .poly import MultiPoly, Ring
from .scroll import DegenerateDrawError, Partition, RamEvaluator, as_partition
from .special import jacobian_evaluator

MAX_REDRAWS = 5


@dataclass(frozen=True)
class RunConfig:
    primes: tuple = DEFAULT_PRIMES[:2]
    trials: int = 3
    seed: int = 0
    budget: Budget = field(default_factory=Budget)
    kernel: str | None = None
    # stop drawing trials for an instance once one has run out of budget
    stop_on_budget: bool = True

    def __post_init__(self):
        if not self.primes:
            raise ValueError("at least one prime is required")
        for p in self.primes:
            check_prime(p)
        if self.trials < 1:
            raise ValueError("at least one trial per prime is required")


# ---------------------------------------------------------------------------
# charts


def chart_rows(g, A, p):
    """Rows ``g_i + sum_c A_ic g_{k+c}`` spanning the point ``A`` of the cell."""
    k = len(A)
    n = len(g)
    return [[(g[i][col] + sum(A[i][c] * g[k + c][col] for c in range(n - k))) % p
             for col in range(n)] for i in range(k)]


def chart_polynomials(evaluator, g, k, p):
    """Coefficient slots of ``evaluator(chart_rows(g, A))`` as polynomials in A.

    ``evaluator`` must be multilinear and alternating in its k input vectors, so
    each row contributes either its base vector or one direction, and terms that
    reuse a direction vanish. Variables are the entries of A, row by row.
    """
    n = len(g)
    m = n - k
    N = k * m
    polys = None
    for choice in itertools.product([None] + list(range(m)), repeat=k):
        used = [c for c in choice if c is not None]
        if len(set(used)) < len(used):
            continue
        vecs = [g[i] if c is None else g[k + c] for i, c in enumerate(choice)]
        val = evaluator(vecs)
        if polys is None:
            polys = [dict() for _ in val]
        e = [0] * N
        for i, c in enumerate(choice):
            if c is not None:
                e[i * m + c] = 1
        e = tuple(e)
        for slot, v in enumerate(val):
            if v % p:
                polys[slot][e] = (polys[slot].get(e, 0) + v) % p
    return [{e: c for e, c in f.items() if c} for f in polys]


def chart_variable_names(k, m):
    return [f"a{i}_{c}" for i in range(k) for c in range(m)]


@dataclass
class FiberIdealSpec:
    """Everything needed to replay one fiber ideal."""
    label: object
    prime: int
    seed: int
    k: int
    n: int
    g: list
    A0: list
    R0: list
    redraws: int = 0

    @property
    def chart_dim(self):
        return self.k * (self.n - self.k)

    @property
    def nvars(self):
        return self.chart_dim + 2


def _draw(label, evaluator, k, n, p, seed):
    rng = random.Random(f"{label}:{p}:{seed}")
    for attempt in range(MAX_REDRAWS + 1):
        g = linalg.random_invertible(n, p, rng)
        A0 = [[rng.randrange(p) for _ in range(n - k)] for _ in range(k)]
        R0 = [v % p for v in evaluator(chart_rows(g, A0, p))]
        if any(R0):
            return FiberIdealSpec(label, p, seed, k, n, g, A0, R0, attempt)
    raise DegenerateDrawError(
        f"{label}: target vanished on {MAX_REDRAWS + 1} random draws over F_{p}")


def fiber_ideal(spec: FiberIdealSpec, evaluator) -> Ideal:
    k, m, N = spec.k, spec.n - spec.k, spec.chart_dim
    p = spec.prime
    ring = Ring(chart_variable_names(k, m) + ["lam", "u"], p)
    lam = [0] * (N + 2)
    lam[N] = 1
    lam = tuple(lam)
    gens = []
    for f, r0 in zip(chart_polynomials(evaluator, spec.g, k, p), spec.R0):
        f = {e + (0, 0): c for e, c in f.items()}
        if r0:
            f[lam] = (f.get(lam, 0) - r0) % p
        gens.append(MultiPoly(ring, {e: c for e, c in f.items() if c}))
    lu = [0] * (N + 2)
    lu[N] = lu[N + 1] = 1
    gens.append(MultiPoly(ring, {tuple(lu): 1, (0,) * (N + 2): p - 1}))
    return Ideal(gens, ring)


def build_fiber_ideal(P, seed=0, p=DEFAULT_PRIMES[0]):
    """Random fiber of the projection-ramification map of the scroll P."""
    P = as_partition(P)
    ev = RamEvaluator(P, p)
    spec = _draw(P.parts, ev, P.r + 1, P.d + P.r, p, seed)
    return spec, fiber_ideal(spec, ev)


def build_veronese_ideal(seed=0, p=DEFAULT_PRIMES[0], evaluator=None):
    """Random fiber of the Jacobian map on nets of conics (Gr(3, 6) -> cubics)."""
    ev = evaluator or jacobian_evaluator(p)
    spec = _draw("veronese", ev, 3, 6, p, seed)
    return spec, fiber_ideal(spec, ev)


# ---------------------------------------------------------------------------
# trials and consensus


@dataclass
class TrialRecord:
    prime: int
    seed: int
    value: int | None
    zero_dim: bool
    ms: int

    @property
    def exhausted(self):
        return self.value is None

    def to_dict(self):
        return {"prime": self.prime, "seed": self.seed, "value": self.value,
                "zero_dim": self.zero_dim, "ms": self.ms}


@dataclass
class DegreeReport:
    partition: object
    degree: int | None
    trials: list
    agreement: bool

    @property
    def exhausted(self):
        return any(t.exhausted for t in self.trials)

    def to_dict(self, timings=True):
        part = list(self.partition) if isinstance(self.partition, (tuple, list)) else self.partition
        trials = [t.to_dict() for t in self.trials]
        if not timings:
            for t in trials:
                t["ms"] = 0
        return {"partition": part, "degree": self.degree, "trials": trials,
                "agreement": self.agreement}

    def to_json(self, timings=True):
        return json.dumps(self.to_dict(timings), separators=(",", ":"))


def run_trial(builder, p, seed, config: RunConfig) -> TrialRecord:
    t0 = time.perf_counter()
    _, I = builder(seed, p)
    try:
        G = buchberger(I, config.budget, kernel=config.kernel)
    except BudgetExceeded:
        return TrialRecord(p, seed, None, False, round(1000 * (time.perf_counter() - t0)))
    if is_zero_dimensional(G):
        value, zd = quotient_dimension(G), True
    else:
        value, zd = 0, False
    return TrialRecord(p, seed, value, zd, round(1000 * (time.perf_counter() - t0)))


def consensus(trials):
    """``(degree, agreement)`` for a list of trial records.

    A degree is reported when at least 3 zero-dimensional trials spread over at
    least 2 primes all agree. When every finished trial has a positive-dimensional
    fiber (again at least 3 over 2 primes) the map is not dominant and the
    degree is 0.
    """
    done = [t for t in trials if not t.exhausted]
    zd = [t for t in done if t.zero_dim]
    if zd:
        values = {t.value for t in zd}
        if len(values) == 1 and len(zd) >= 3 and len({t.prime for t in zd}) >= 2:
            return values.pop(), True
        return None, False
    if len(done) >= 3 and len({t.prime for t in done}) >= 2:
        return 0, True
    return None, False


def run_trials(label, builder, config: RunConfig) -> DegreeReport:
    trials = []
    for p in config.primes:
        for t in range(config.trials):
            rec = run_trial(builder, p, config.seed + t, config)
            trials.append(rec)
            if rec.exhausted and config.stop_on_budget:
                degree, agree = consensus(trials)
                return DegreeReport(label, degree, trials, agree)
    degree, agree = consensus(trials)
    return DegreeReport(label, degree, trials, agree)


def phi(P, config: RunConfig | None = None) -> DegreeReport:
    """Degree of the projection-ramification map of the scroll of type P."""
    P = as_partition(P)
    config = config or RunConfig()
    return run_trials(P.parts, lambda seed, p: build_fiber_ideal(P, seed, p), config)


def veronese_degree(config: RunConfig | None = None, evaluator_factory=None) -> DegreeReport:
    """Degree of the Jacobian map on nets of conics.

    ``evaluator_factory(p)`` replaces the Jacobian evaluator, for testing.
    """
    config = config or RunConfig()
    factory = evaluator_factory or jacobian_evaluator
    return run_trials("veronese",
                      lambda seed, p: build_veronese_ideal(seed, p, factory(p)), config)


# ---------------------------------------------------------------------------
# oracles and bookkeeping


def _proportional(c, R0, p):
    if not any(c):
        return False
    return linalg.rank([list(c), list(R0)], p) == 1


def brute_force_fiber_count(P, q, seed=0, limit=10**8):
    """Rational points of the fiber in one cell, by exhaustive search over F_q."""
    P = as_partition(P)
    q = check_prime(q)
    k, n = P.r + 1, P.d + P.r
    N = k * (n - k)
    if q ** N > limit:
        raise ValueError(f"{q}^{N} chart points exceed the search limit {limit}")
    ev = RamEvaluator(P, q)
    spec = _draw(P.parts, ev, k, n, q, seed)
    count = 0
    for flat in itertools.product(range(q), repeat=N):
        A = [list(flat[i * (n - k):(i + 1) * (n - k)]) for i in range(k)]
        if _proportional(ev(chart_rows(spec.g, A, q)), spec.R0, q):
            count += 1
    return count


def dominated(P, Q) -> bool:
    """P lies below Q in dominance order (Q is at least as balanced)."""
    P, Q = as_partition(P), as_partition(Q)
    if (P.r, P.d) != (Q.r, Q.d):
        return False
    sp = list(itertools.accumulate(sorted(P.parts)))
    sq = list(itertools.accumulate(sorted(Q.parts)))
    return all(a <= b for a, b in zip(sp, sq))


def monotonicity_check(P, Q, reports=None, config: RunConfig | None = None):
    """``phi(P) <= phi(Q)`` for P below Q; None when either degree lacks consensus."""
    if not dominated(P, Q):
        raise ValueError(f"{P} is not below {Q} in dominance order")
    reports = reports or {}
    vals = []
    for X in (P, Q):
        rep = reports.get(as_partition(X).parts) or phi(X, config)
        vals.append(rep.degree if rep.agreement else None)
    if None in vals:
        return None
    return vals[0] <= vals[1]


__all__ = [
    "DegreeReport",
    "FiberIdealSpec",
    "Partition",
    "RunConfig",
    "TrialRecord",
    "brute_force_fiber_count",
    "build_fiber_ideal",
    "build_veronese_ideal",
    "chart_polynomials",
    "chart_rows",
    "consensus",
    "dominated",
    "monotonicity_check",
    "phi",
    "veronese_degree",
]
