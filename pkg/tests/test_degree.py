import itertools

import pytest

from projram import linalg
from projram.degree import (
    RunConfig,
    TrialRecord,
    brute_force_fiber_count,
    build_fiber_ideal,
    build_veronese_ideal,
    consensus,
    dominated,
    monotonicity_check,
    phi,
    veronese_degree,
)
from projram.ff import DEFAULT_PRIMES
from projram.groebner import Budget
from projram.scroll import DegenerateDrawError
from projram.special import jacobian_evaluator

P0, P1 = DEFAULT_PRIMES[:2]


def test_fiber_layout_surface():
    spec, I = build_fiber_ideal((1, 1), seed=0)
    assert spec.chart_dim == 3
    assert I.ring.nvars == 3 + 2
    assert len(I) == 4 + 1
    assert spec.redraws == 0 and any(spec.R0)


def test_fiber_layout_veronese():
    spec, I = build_veronese_ideal(seed=0)
    assert spec.chart_dim == 9
    assert len(I) == 10 + 1


def test_fiber_contains_base_point():
    spec, I = build_fiber_ideal((1, 2), seed=5)
    point = [x for row in spec.A0 for x in row] + [1, 1]
    assert all(f.eval(point) == 0 for f in I)


@pytest.mark.parametrize("parts,expected", [((1, 1), 1), ((1, 2), 1), ((3,), 2), ((2, 2), 2)])
def test_small_degrees(parts, expected):
    rep = phi(parts)
    assert rep.agreement and rep.degree == expected
    assert len(rep.trials) == 6
    assert {t.prime for t in rep.trials} == {P0, P1}


def test_rational_normal_quartic():
    assert phi((4,)).degree == 5


@pytest.mark.parametrize("parts,q,expected", [((1, 1), 7, 1), ((2,), 7, 1), ((1, 2), 5, 1)])
def test_brute_force(parts, q, expected):
    assert brute_force_fiber_count(parts, q) == expected


def test_brute_force_limit():
    with pytest.raises(ValueError):
        brute_force_fiber_count((2, 2), 101)


def test_replay_is_byte_identical():
    cfg = RunConfig(seed=42)
    a, b = phi((2, 2), cfg), phi((2, 2), cfg)
    assert a.to_json(timings=False) == b.to_json(timings=False)
    assert [t.seed for t in a.trials] == [42, 43, 44] * 2


def _plucker_evaluator(p):
    cols = list(itertools.combinations(range(6), 3))

    def ev(vectors):
        return [linalg.det([[v[c] for c in S] for v in vectors], p) for S in cols]
    return ev


def test_disagreement_report_shape():
    """Different maps per prime give no consensus."""
    def factory(p):
        return jacobian_evaluator(p) if p == P0 else _plucker_evaluator(p)
    rep = veronese_degree(RunConfig(), factory)
    assert not rep.agreement and rep.degree is None and not rep.exhausted
    assert {t.value for t in rep.trials} == {3, 1}
    d = rep.to_dict()
    assert d["partition"] == "veronese"
    assert set(d["trials"][0]) == {"prime", "seed", "value", "zero_dim", "ms"}


def test_redraw_on_vanishing_target():
    calls = []

    def factory(p):
        real = jacobian_evaluator(p)

        def ev(vectors):
            calls.append(1)
            return [0] * 10 if len(calls) == 1 else real(vectors)
        return ev
    spec, _ = build_veronese_ideal(seed=0, evaluator=factory(P0))
    assert spec.redraws == 1


def test_persistent_degeneracy_raises():
    with pytest.raises(DegenerateDrawError):
        build_veronese_ideal(seed=0, evaluator=lambda vectors: [0] * 10)


def test_budget_exhaustion_is_partial():
    rep = phi((2, 3), RunConfig(budget=Budget(steps=20)))
    assert rep.exhausted and not rep.agreement and rep.degree is None
    assert len(rep.trials) == 1 and rep.trials[0].value is None


def _rec(p, v, zd=True):
    return TrialRecord(p, 0, v, zd, 0)


def test_consensus_rules():
    assert consensus([_rec(P0, 2)] * 3 + [_rec(P1, 2)] * 3) == (2, True)
    assert consensus([_rec(P0, 2)] * 3) == (None, False)
    assert consensus([_rec(P0, 2), _rec(P0, 2), _rec(P1, 3)]) == (None, False)
    assert consensus([_rec(P0, 0, False)] * 2 + [_rec(P1, 0, False)]) == (0, True)
    assert consensus([_rec(P0, None, False)] * 6) == (None, False)


def test_dominance():
    assert dominated((1, 3), (2, 2))
    assert dominated((1, 4), (2, 3))
    assert not dominated((2, 2), (1, 3))
    assert not dominated((1, 2), (2, 2))


def test_monotonicity():
    assert monotonicity_check((1, 3), (2, 2)) is True
    with pytest.raises(ValueError):
        monotonicity_check((2, 2), (1, 3))


def test_monotonicity_indeterminate():
    cfg = RunConfig(budget=Budget(steps=20))
    assert monotonicity_check((1, 4), (2, 3), config=cfg) is None


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(primes=())
    with pytest.raises(ValueError):
        RunConfig(primes=(15,))
    with pytest.raises(ValueError):
        RunConfig(trials=0)
