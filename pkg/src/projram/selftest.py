"""Quick invariant checks behind ``projram selftest``; each runs in well under a second."""

from __future__ import annotations

import random

from . import linalg
from .degree import RunConfig, brute_force_fiber_count, phi
from .groebner import Ideal, buchberger, quotient_dimension
from .poly import Ring
from .schubert import catalan_closed, plucker_degree
from .scroll import (
    Partition,
    THREEFOLD_SIGN,
    ram_determinant,
    ram_differential,
    ram_threefold_closed,
    random_frame,
    requirement_holds,
    threefold_frame,
    wronskian,
)
from .poly import UniPoly
from .special import Conic, mu_triangle, polar_conjugate, random_triangle, standard_conic
from .variation import dual_number_consistency, is_maximal_variation

P0 = 32003


def _routes_agree():
    rng = random.Random(1)
    for P in [(1, 1), (2, 3), (1, 1, 2)]:
        for _ in range(5):
            F = random_frame(P, P0, rng)
            if ram_determinant(F, P) != ram_differential(F, P):
                return False, f"routes differ for {P}"
    return True, ""


def _wronskian():
    rng = random.Random(2)
    for _ in range(5):
        f = UniPoly([rng.randrange(P0) for _ in range(3)], P0)
        g = UniPoly([rng.randrange(P0) for _ in range(3)], P0)
        R = ram_determinant([[f], [g]], Partition((2,)))
        if R.components[0] != wronskian(f, g):
            return False, "Wronskian differs from the determinant"
    return True, ""


def _threefold():
    rng = random.Random(3)
    for k in range(3):
        polys = [UniPoly([rng.randrange(P0) for _ in range(k + 2)], P0) for _ in range(4)]
        F, P = threefold_frame(*polys), (1, 1, k + 1)
        if ram_threefold_closed(*polys, k) != ram_determinant(F, P).scale(THREEFOLD_SIGN):
            return False, f"closed form differs at k={k}"
    return True, ""


def _bezout():
    R = Ring("x y", P0)
    x, y = R.gens()
    a = quotient_dimension(buchberger(Ideal([x**2, y**2])))
    b = quotient_dimension(buchberger(Ideal([x**2 - 1, y**3 - y])))
    return (a, b) == (4, 6), f"got {a}, {b}"


def _catalan():
    bad = [n for n in range(2, 9) if plucker_degree(2, n + 1) != catalan_closed(n)]
    return not bad, f"mismatch at n={bad}" if bad else ""


def _small_degrees():
    cfg = RunConfig()
    vals = {P: phi(P, cfg).degree for P in [(1, 1), (1, 2), (3,), (2, 2)]}
    want = {(1, 1): 1, (1, 2): 1, (3,): 2, (2, 2): 2}
    return vals == want, "" if vals == want else f"got {vals}"


def _brute_force():
    got = (brute_force_fiber_count((1, 1), 7), brute_force_fiber_count((2,), 7))
    return got == (1, 1), f"got {got}"


def _variation():
    verdicts = {P: is_maximal_variation(P).maximal_variation for P in [(1, 1), (2, 2), (1, 1, 1, 2)]}
    want = {(1, 1): True, (2, 2): True, (1, 1, 1, 2): False}
    ok = verdicts == want and dual_number_consistency((1, 1))
    return ok, "" if ok else f"got {verdicts}"


def _mu_conjugacy():
    rng = random.Random(4)
    Q0 = standard_conic(P0)
    for _ in range(10):
        g = linalg.random_invertible(3, P0, rng)
        gt = [list(r) for r in zip(*g)]
        Q = Conic(linalg.matmul(gt, linalg.matmul(Q0.matrix, g, P0), P0), P0)
        T = random_triangle(P0, rng)
        if mu_triangle(*T, Q) != mu_triangle(*polar_conjugate(Q, *T), Q):
            return False, "conjugate triangles have different images"
    return True, ""


def _requirement():
    bad = [(b, r) for b in range(2, 7) for r in range(2, 7) if requirement_holds(1, b, r) != (r >= 4)]
    return not bad, f"unexpected at {bad}" if bad else ""


CHECKS = [
    ("ramification routes agree", _routes_agree),
    ("Wronskian is the rank-1 determinant", _wronskian),
    ("threefold closed form", _threefold),
    ("Bezout counts", _bezout),
    ("Catalan via Pieri", _catalan),
    ("small fiber degrees", _small_degrees),
    ("brute-force fiber counts", _brute_force),
    ("maximal variation verdicts", _variation),
    ("mu-conjugacy", _mu_conjugacy),
    ("requirement sweep", _requirement),
]


def run_all():
    out = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, reported not raised
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), "" if ok else detail))
    return out
