"""Acceptance criteria, one reported line each.

Every criterion appends ``PASS``/``FAIL``/``SKIP`` to the summary printed at
the end of the run, then asserts. Stretch entries of the degree table have a
30 minute budget per trial; running out of it reports a skip.
"""

import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from projram import linalg
from projram.degree import RunConfig, monotonicity_check, phi, veronese_degree
from projram.groebner import (
    Budget,
    Ideal,
    buchberger,
    normal_form,
    quotient_dimension,
    s_polynomial,
)
from projram.poly import MultiPoly, Ring, UniPoly
from projram.schubert import plucker_degree
from projram.scroll import (
    Partition,
    THREEFOLD_SIGN,
    ram_determinant,
    ram_differential,
    ram_threefold_closed,
    random_frame,
    requirement_holds,
    stabilizer_dim_source,
    stabilizer_dim_target,
    threefold_frame,
    wronskian,
)
from projram.special import Conic, mu_triangle, polar_conjugate, random_triangle, standard_conic
from projram.variation import dual_number_consistency, is_maximal_variation

P = 32003
REPORTS = {}


def record(name, ok, detail=""):
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


def report_for(parts, budget=None):
    if parts not in REPORTS:
        REPORTS[parts] = phi(parts, RunConfig(budget=budget or Budget()))
    return REPORTS[parts]


def _trial_secs(rep):
    return max(t.ms for t in rep.trials) / 1000


# ---------------------------------------------------------------------------
# degree table


@pytest.mark.parametrize("parts,expected", [
    ((1, 1), 1), ((1, 2), 1), ((1, 3), 1), ((1, 4), 1), ((2, 2), 2), ((2, 3), 6)])
def test_table(parts, expected):
    rep = report_for(parts)
    secs = _trial_secs(rep)
    ok = rep.agreement and rep.degree == expected and secs <= 60 and len(rep.trials) >= 6
    record(f"table phi{parts} = {expected}", ok, f"got {rep.degree}, slowest trial {secs:.1f}s")


@pytest.mark.slow
@pytest.mark.parametrize("parts,expected", [((3, 3), 22), ((2, 4), 17)])
def test_table_stretch(parts, expected):
    rep = report_for(parts, Budget(seconds=1800, steps=10**9))
    if rep.exhausted:
        ACCEPTANCE_LINES.append(f"SKIP table phi{parts} = {expected} (budget exhausted)")
        pytest.skip("stretch entry ran out of budget")
    secs = _trial_secs(rep)
    record(f"table phi{parts} = {expected} (stretch)", rep.agreement and rep.degree == expected,
           f"got {rep.degree}, slowest trial {secs:.1f}s")


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 2), (4, 5), (5, 14)])
def test_rational_normal_curves(n, expected):
    t0 = time.perf_counter()
    rep = phi((n,))
    secs = time.perf_counter() - t0
    ok = rep.agreement and rep.degree == plucker_degree(2, n + 1) == expected and secs <= 30
    record(f"phi(({n},)) = plucker_degree(2, {n + 1}) = {expected}", ok,
           f"got {rep.degree}, {secs:.1f}s")


def test_veronese():
    t0 = time.perf_counter()
    rep = veronese_degree()
    secs = time.perf_counter() - t0
    record("veronese degree = 3", rep.agreement and rep.degree == 3 and secs <= 120,
           f"got {rep.degree}, {secs:.1f}s")


# ---------------------------------------------------------------------------
# maximal variation


@pytest.mark.parametrize("parts,expected", [
    ((1, 1), True), ((1, 2), True), ((1, 3), True), ((1, 1, 2), True), ((1, 1, 3), True),
    ((1, 1, 1), True), ((2, 2), True), ((2, 2, 2), True),
    ((1, 1, 1, 2), False), ((1, 1, 1, 3), False), ((1, 1, 1, 1, 2), False)])
def test_maximal_variation(parts, expected):
    t0 = time.perf_counter()
    rep = is_maximal_variation(parts)
    secs = time.perf_counter() - t0
    record(f"maximal variation {parts} is {expected}",
           rep.maximal_variation is expected and secs < 5,
           f"rank {rep.rank}/{rep.dim_gr}, {secs:.2f}s")


# ---------------------------------------------------------------------------
# oracle equalities


@pytest.mark.parametrize("parts", [(1, 1), (2, 2), (2, 3), (1, 1, 2), (2, 2, 2), (1, 1, 1, 2)])
def test_routes_agree(parts):
    rng = random.Random(f"routes:{parts}")
    bad = sum(ram_determinant(F, parts) != ram_differential(F, parts)
              for F in (random_frame(parts, P, rng) for _ in range(100)))
    record(f"ram_determinant = ram_differential on 100 frames {parts}", bad == 0,
           f"{bad} mismatches")


@pytest.mark.parametrize("k", [0, 1, 2])
def test_threefold_closed_form(k):
    rng = random.Random(f"threefold:{k}")
    bad = 0
    for _ in range(100):
        polys = [UniPoly([rng.randrange(P) for _ in range(k + 2)], P) for _ in range(4)]
        want = ram_determinant(threefold_frame(*polys), (1, 1, k + 1)).scale(THREEFOLD_SIGN)
        bad += ram_threefold_closed(*polys, k) != want
    record(f"threefold closed form = {THREEFOLD_SIGN} * determinant, k={k}", bad == 0,
           f"{bad} mismatches")


def test_wronskian_oracle():
    rng = random.Random("wronskian")
    bad = 0
    for _ in range(100):
        n = rng.randrange(1, 7)
        f, g = (UniPoly([rng.randrange(P) for _ in range(n + 1)], P) for _ in range(2))
        bad += ram_determinant([(f,), (g,)], (n,)).components[0] != wronskian(f, g)
    record("Wronskian = r=1 determinant on 100 pairs", bad == 0, f"{bad} mismatches")


# ---------------------------------------------------------------------------
# property suites


SCROLL_PARTS = [(1, 1), (2, 3), (1, 1, 2), (2, 2, 2)]


def test_scroll_gl_covariance():
    bad = 0
    for parts in SCROLL_PARTS:
        P_ = Partition(parts)
        rng = random.Random(f"gl:{parts}")
        for _ in range(25):
            F = random_frame(P_, P, rng)
            g = linalg.random_invertible(P_.r + 1, P, rng)
            G = [tuple(sum((F[k][j] * g[i][k] for k in range(P_.r + 1)), UniPoly([], P))
                       for j in range(P_.r)) for i in range(P_.r + 1)]
            bad += ram_differential(G, P_) != ram_differential(F, P_).scale(linalg.det(g, P))
    record("scroll GL-covariance with det factor", bad == 0, f"{bad} failures")


def test_scroll_shift_covariance():
    bad = 0
    for parts in SCROLL_PARTS:
        rng = random.Random(f"shift:{parts}")
        for _ in range(25):
            F = random_frame(parts, P, rng)
            c = rng.randrange(P)
            shifted = [tuple(f.shift(c) for f in s) for s in F]
            bad += ram_differential(shifted, parts) != ram_differential(F, parts).shift(c)
    record("scroll shift covariance", bad == 0, f"{bad} failures")


def test_scroll_degree_bounds():
    bad = 0
    for parts in SCROLL_PARTS:
        P_ = Partition(parts)
        rng = random.Random(f"bounds:{parts}")
        for _ in range(25):
            R = ram_differential(random_frame(P_, P, rng), P_)
            bad += any(c.degree > b for c, b in zip(R.components, P_.ram_degrees))
    record("scroll degree bounds", bad == 0, f"{bad} failures")


def _random_ideal(rng):
    R = Ring("x y z", P)
    gens = []
    for _ in range(3):
        terms = {}
        for _ in range(4):
            e = [0, 0, 0]
            for _ in range(rng.randrange(4)):
                e[rng.randrange(3)] += 1
            terms[tuple(e)] = rng.randrange(1, P)
        gens.append(MultiPoly(R, terms))
    return Ideal(gens, R)


def test_groebner_properties():
    rng = random.Random("groebner")
    spoly = member = order = 0
    for _ in range(30):
        I = _random_ideal(rng)
        G = buchberger(I)
        els = G.elements
        spoly += sum(not normal_form(s_polynomial(els[i], els[j]), G).is_zero()
                     for i in range(len(els)) for j in range(i + 1, len(els)))
        member += sum(not normal_form(f, G).is_zero() for f in I)
        gens = list(I)
        rng.shuffle(gens)
        order += buchberger(Ideal(gens, I.ring)).elements != els
    R = Ring("x y", P)
    x, y = R.gens()
    a = quotient_dimension(buchberger(Ideal([x**2, y**2])))
    b = quotient_dimension(buchberger(Ideal([x**2 - 1, y**3 - y])))
    ok = spoly == member == order == 0 and (a, b) == (4, 6)
    record("groebner S-pairs, membership, order independence, Bezout 4 and 6", ok,
           f"S-pair {spoly}, member {member}, order {order}, counts {a}, {b}")


def test_variation_dual_numbers():
    parts = [(1, 1), (1, 2), (2, 2), (1, 1, 2)]
    bad = [P_ for P_ in parts if not dual_number_consistency(P_)]
    record("dual-number derivative = symbolic derivative", not bad, f"failed for {bad}" if bad else "")


def test_mu_conjugacy():
    rng = random.Random("mu")
    Q0 = standard_conic(P)
    bad = 0
    for _ in range(100):
        g = linalg.random_invertible(3, P, rng)
        gt = [list(r) for r in zip(*g)]
        Q = Conic(linalg.matmul(gt, linalg.matmul(Q0.matrix, g, P), P), P)
        T = random_triangle(P, rng)
        bad += mu_triangle(*T, Q) != mu_triangle(*polar_conjugate(Q, *T), Q)
    record("mu-conjugacy on 100 random triangles", bad == 0, f"{bad} failures")


# ---------------------------------------------------------------------------
# stabilizers and the requirement sweep


def test_stabilizers():
    t, s, t2 = (stabilizer_dim_target((1, 1, 1, 2)), stabilizer_dim_source((1, 1, 1, 2)),
                stabilizer_dim_target((1, 1, 2)))
    record("stabilizer dims: target(1,1,1,2) >= 1, source(1,1,1,2) = 0, target(1,1,2) = 0",
           t >= 1 and s == 0 and t2 == 0, f"got {t}, {s}, {t2}")


def test_requirement_sweep():
    bad = [(b, r) for b in range(2, 7) for r in range(2, 7) if requirement_holds(1, b, r) != (r >= 4)]
    record("requirement_holds(1, b, r) iff r >= 4", not bad, f"wrong at {bad}" if bad else "")


# ---------------------------------------------------------------------------
# monotonicity


def test_monotonicity_surfaces():
    ok = monotonicity_check((1, 3), (2, 2), REPORTS) is True
    record("monotonicity phi(1,3) <= phi(2,2)", ok)


@pytest.mark.slow
def test_monotonicity_stretch():
    """(1,4) < (2,3) in dominance order; (2,3) and (3,3) differ in degree d, so the
    second link compares values only."""
    big = report_for((3, 3), Budget(seconds=1800, steps=10**9))
    report_for((2, 4), Budget(seconds=1800, steps=10**9))
    first = monotonicity_check((1, 4), (2, 3), REPORTS)
    dominance = monotonicity_check((2, 4), (3, 3), REPORTS)
    if not big.agreement or dominance is None:
        ACCEPTANCE_LINES.append("SKIP monotonicity phi(1,4) <= phi(2,3) <= phi(3,3) (no consensus)")
        pytest.skip("a stretch degree is unavailable")
    second = report_for((2, 3)).degree <= big.degree
    record("monotonicity phi(1,4) <= phi(2,3) <= phi(3,3) and phi(2,4) <= phi(3,3)",
           first is True and second and dominance is True)
