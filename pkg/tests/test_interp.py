import itertools
import random
from fractions import Fraction

import pytest

from footprint.errors import (
    CardinalityTooLarge,
    ChainLeavesBox,
    DuplicatePoints,
    GuaranteeUnmetAndConstructionFailed,
    InfiniteField,
    KOutOfRange,
    NotConsecutive,
)
from footprint.field import GF, RATIONAL
from footprint.interp import (
    InterpolationProblem,
    capacity,
    guarantee_check,
    interpolate,
    sharpness_witness,
    tao_bound,
    tao_lemma_check,
    vanishing_polynomials,
)
from footprint.monomial import BoxRegion, MonomialOrder, consecutive_chain, parse_order
from footprint.poly import CartesianGrid, PointSet, parse_polynomial

import oracles

DEGLEX = parse_order("deglex:X1<X2")
F8_CHAIN = [(3, 1), (2, 2), (1, 3)]


def check_solution(problem, polys, k):
    F = problem.field
    assert len(polys) == k
    lms = [f.leading_monomial(problem.order) for f in polys]
    assert len(set(lms)) == k and set(lms) <= set(problem.chain)
    for f in polys:
        assert f.leading_coefficient(problem.order) == F.one
        for P in problem.points:
            assert oracles.eval_scalar(F, f, P) == 0
        if F.is_finite:
            assert all(max(M) < F.q for M in f.terms)


# -- problem validation --

def test_problem_validation():
    F = GF(8)
    with pytest.raises(NotConsecutive):
        InterpolationProblem(F, DEGLEX, [(3, 1), (1, 3)], [], 1)
    with pytest.raises(ChainLeavesBox):
        InterpolationProblem(GF(2), DEGLEX, [(2, 0)], [], 1)
    with pytest.raises(KOutOfRange):
        InterpolationProblem(F, DEGLEX, F8_CHAIN, [], 4)
    with pytest.raises(KOutOfRange):
        InterpolationProblem(F, DEGLEX, F8_CHAIN, [], 0)
    with pytest.raises(DuplicatePoints):
        InterpolationProblem(F, DEGLEX, F8_CHAIN, [(0, 0), (0, 0)], 1)


def test_chain_may_skip_monomials_outside_the_box():
    # over GF(2) the box successor of X2 is X1*X2 although X1^2 and X2^2 lie between
    InterpolationProblem(GF(2), DEGLEX, [(0, 1), (1, 1)], [], 2)
    with pytest.raises(NotConsecutive):
        InterpolationProblem(RATIONAL, DEGLEX, [(0, 1), (1, 1)], [], 2)


# -- guarantee thresholds --

def test_guarantee_thresholds_gf8():
    p = InterpolationProblem(GF(8), DEGLEX, F8_CHAIN, [])
    assert guarantee_check(p, 3) == (8, True)
    assert guarantee_check(p, 2) == (11, True)
    assert guarantee_check(p, 1) == (13, True)


def test_guarantee_satisfied_flag():
    pts = [(i, j) for i in range(3) for j in range(4)]
    p = InterpolationProblem(GF(8), DEGLEX, F8_CHAIN, pts[:12], 1)
    assert guarantee_check(p) == (13, True)
    p = InterpolationProblem(GF(8), DEGLEX, F8_CHAIN, pts[:11], 2)
    assert guarantee_check(p) == (11, False)


# -- interpolate --

def test_interpolate_rational_univariate():
    Q = RATIONAL
    p = InterpolationProblem(Q, parse_order("deglex:X1"), [(2,)], [(0,), (1,)], 1)
    (f,) = interpolate(p)
    assert f == parse_polynomial(Q, 1, "X1^2 - X1")


def test_interpolate_gf2_origin():
    F = GF(2)
    p = InterpolationProblem(F, DEGLEX, [(1, 0), (0, 1)], [(0, 0)], 2)
    assert interpolate(p) == [parse_polynomial(F, 2, "X1"), parse_polynomial(F, 2, "X2")]


def test_interpolate_gf8_random_sets():
    F = GF(8)
    grid = CartesianGrid.full(F, 2)
    rng = random.Random(8)
    for _ in range(100):
        A = rng.sample(grid.points, 7)
        p = InterpolationProblem(F, DEGLEX, F8_CHAIN, A, 3)
        check_solution(p, interpolate(p), 3)


def test_interpolate_empty_set_returns_chain_monomials():
    F = GF(4)
    p = InterpolationProblem(F, DEGLEX, F8_CHAIN[:2], [], 2)
    assert [f.terms for f in interpolate(p)] == [{(3, 1): 1}, {(2, 2): 1}]


def test_interpolate_failure_reports_achieved():
    F = GF(2)
    p = InterpolationProblem(F, DEGLEX, [(1, 0), (0, 1)], [(0, 0), (1, 0), (0, 1)], 2)
    with pytest.raises(GuaranteeUnmetAndConstructionFailed) as info:
        interpolate(p)
    assert info.value.achieved == 0
    p = InterpolationProblem(F, DEGLEX, [(1, 0), (0, 1)], [(0, 0), (1, 0)], 2)
    with pytest.raises(GuaranteeUnmetAndConstructionFailed) as info:
        interpolate(p)
    assert info.value.achieved == 1
    assert info.value.polynomials[0] == parse_polynomial(F, 2, "X2")


def all_box_chains(F, m, tmax, order):
    box = BoxRegion.square(F.q, m)
    members = order.sorted(box)
    for t in range(1, tmax + 1):
        for i in range(len(members) - t + 1):
            yield members[i : i + t]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_guarantee_holds(q):
    F = GF(q)
    rng = random.Random(q)
    points = CartesianGrid.full(F, 2).points
    for order in (DEGLEX, parse_order("lex:X2<X1")):
        for chain in all_box_chains(F, 2, 3, order):
            for k in range(1, len(chain) + 1):
                base = InterpolationProblem(F, order, chain, [], k)
                threshold, _ = guarantee_check(base)
                size = min(threshold - 1, len(points))
                for _ in range(5):
                    A = rng.sample(points, rng.randint(0, size))
                    p = InterpolationProblem(F, order, chain, A, k)
                    check_solution(p, interpolate(p), k)


def test_guarantee_exhaustive_gf2():
    F = GF(2)
    points = CartesianGrid.full(F, 2).points
    for chain in all_box_chains(F, 2, 3, DEGLEX):
        for k in range(1, len(chain) + 1):
            threshold, _ = guarantee_check(InterpolationProblem(F, DEGLEX, chain, [], k))
            for r in range(min(threshold, 5)):
                for A in itertools.combinations(points, r):
                    p = InterpolationProblem(F, DEGLEX, chain, A, k)
                    check_solution(p, interpolate(p), k)


def test_interpolate_rational_random():
    Q = RATIONAL
    rng = random.Random(11)
    for order in (DEGLEX, parse_order("lex:X1<X2"), parse_order("degrevlex:X2<X1")):
        for _ in range(10):
            start = (rng.randint(0, 2), rng.randint(0, 2))
            t = rng.randint(1, 3)
            chain = consecutive_chain(order, None, start, t)
            k = rng.randint(1, t)
            threshold, _ = guarantee_check(InterpolationProblem(Q, order, chain, [], k))
            pts = set()
            target = rng.randint(0, threshold - 1)
            while len(pts) < target:
                pts.add((Fraction(rng.randint(-5, 5), rng.randint(1, 3)), Fraction(rng.randint(-5, 5))))
            p = InterpolationProblem(Q, order, chain, sorted(pts), k)
            check_solution(p, interpolate(p), k)


def test_rational_grid_padding():
    Q = RATIONAL
    p = InterpolationProblem(Q, DEGLEX, [(1, 1)], [(Fraction(1, 2), 7)], 1)
    grid = p.grid()
    assert grid.coords[0][:2] == (Fraction(1, 2), 0)
    assert grid.coords[1][:2] == (7, 0)
    assert all(len(A) >= 4 for A in grid.coords)


# -- capacity --

def test_capacity_examples():
    F = GF(2)
    chain = [(1, 0), (0, 1)]
    assert capacity(InterpolationProblem(F, DEGLEX, chain, [])) == 2
    full = CartesianGrid.full(F, 2).points
    assert capacity(InterpolationProblem(F, DEGLEX, chain, full)) == 0
    assert capacity(InterpolationProblem(F, DEGLEX, chain, [(0, 0), (1, 1)])) == 1


def test_capacity_rational():
    with pytest.raises(InfiniteField):
        capacity(InterpolationProblem(RATIONAL, DEGLEX, [(1, 0)], [(0, 0)]))


@pytest.mark.parametrize("q", [2, 3])
def test_capacity_counts_constructible_polynomials(q):
    F = GF(q)
    rng = random.Random(20 + q)
    points = CartesianGrid.full(F, 2).points
    for chain in all_box_chains(F, 2, 3, DEGLEX):
        for _ in range(6):
            A = rng.sample(points, rng.randint(0, len(points)))
            p = InterpolationProblem(F, DEGLEX, chain, A)
            assert capacity(p) == len(vanishing_polynomials(p))


# -- sharpness witnesses --

def test_witness_gf2():
    F = GF(2)
    chain = [(1, 0), (0, 1)]
    A = sharpness_witness(F, DEGLEX, chain, 2)
    assert len(A) == 2
    assert capacity(InterpolationProblem(F, DEGLEX, chain, A)) < 2
    # no smaller set defeats k = 2
    for B in itertools.combinations(CartesianGrid.full(F, 2).points, 1):
        assert capacity(InterpolationProblem(F, DEGLEX, chain, B)) == 2


@pytest.mark.parametrize("q,d", [(3, 1), (3, 2), (5, 3), (4, 2)])
def test_witness_univariate(q, d):
    F = GF(q)
    order = parse_order("deglex:X1")
    A = sharpness_witness(F, order, [(d,)], 1)
    assert len(A) == d + 1
    p = InterpolationProblem(F, order, [(d,)], A, 1)
    with pytest.raises(GuaranteeUnmetAndConstructionFailed):
        interpolate(p)


def test_witness_gf3_two_chain():
    F = GF(3)
    order = parse_order("deglex:X1")
    chain = [(1,), (2,)]
    A = sharpness_witness(F, order, chain, 1)
    assert capacity(InterpolationProblem(F, order, chain, A)) == 0
    for r in range(len(A)):
        for B in itertools.combinations(F.elements(), r):
            assert capacity(InterpolationProblem(F, order, chain, [(b,) for b in B])) >= 1


def test_witness_size_equals_threshold_gf8():
    F = GF(4)
    chain = consecutive_chain(DEGLEX, BoxRegion((4, 4)), (3, 1), 3)
    for k in (1, 2, 3):
        A = sharpness_witness(F, DEGLEX, chain, k)
        threshold, _ = guarantee_check(InterpolationProblem(F, DEGLEX, chain, [], k))
        assert len(A) == threshold
        assert capacity(InterpolationProblem(F, DEGLEX, chain, A)) < k


# -- low-degree vanishing polynomials --

def test_tao_examples():
    Q = RATIONAL
    f = tao_lemma_check(Q, 2, 1, [(0, 0), (1, 1)])
    assert f.degree() <= 1 and f.evaluate((0, 0)) == 0 and f.evaluate((1, 1)) == 0
    assert f == parse_polynomial(Q, 2, "X2 - X1")
    assert tao_lemma_check(Q, 2, 1, []) == parse_polynomial(Q, 2, "1")
    F = GF(2)
    assert tao_lemma_check(F, 2, 1, [(0, 0), (1, 0)]) == parse_polynomial(F, 2, "X2")


def test_tao_cardinality():
    with pytest.raises(CardinalityTooLarge):
        tao_lemma_check(GF(2), 2, 1, [(0, 0), (1, 0), (0, 1)])
    assert tao_bound(RATIONAL, 3, 2) == 10
    assert tao_bound(GF(2), 2, 5) == 4


def test_tao_random():
    rng = random.Random(4)
    for F in (GF(3), GF(5), RATIONAL):
        for _ in range(15):
            m, d = rng.randint(1, 3), rng.randint(0, 3)
            bound = tao_bound(F, m, d)
            vals = range(F.q) if F.is_finite else range(-4, 5)
            pts = set()
            target = rng.randint(0, bound - 1)
            universe = list(itertools.product(vals, repeat=m))
            target = min(target, len(universe) - 1)
            pts = rng.sample(universe, target)
            f = tao_lemma_check(F, m, d, pts)
            assert not f.is_zero() and f.degree() <= d
            for P in pts:
                assert oracles.eval_scalar(F, f, tuple(F.from_int(v) for v in P)) == 0


def test_point_set_input():
    F = GF(3)
    A = PointSet(F, [(0, 1), (2, 2)])
    p = InterpolationProblem(F, DEGLEX, [(1, 1)], A, 1)
    check_solution(p, interpolate(p), 1)
