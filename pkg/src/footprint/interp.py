"""Polynomials with prescribed distinct leading monomials vanishing on a point set.

Over a finite field every point lies in the full grid F_q^m and supports stay
inside the box of exponents below q.  Over the rationals the coordinate sets of
A are padded with fresh integers 0, 1, 2, ... to a grid large enough to hold the
chain.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .codes import (
    DEFAULT_BUDGET,
    chain_codes,
    dual_code,
    evaluation_matrix,
    rghw_witness,
    supported_subcode,
)
from .errors import (
    CardinalityTooLarge,
    ChainLeavesBox,
    DimensionMismatch,
    EmptyInput,
    GuaranteeUnmetAndConstructionFailed,
    InfiniteField,
    InvariantViolation,
    KOutOfRange,
    NotConsecutive,
)
from .field import FieldSpec
from .monomial import (
    BoxRegion,
    MonomialOrder,
    degree,
    is_consecutive,
    mu,
    render_monomial,
    rm_dimension,
)
from .poly import CartesianGrid, PointSet, Polynomial, evaluate_many


@dataclass
class InterpolationProblem:
    field: FieldSpec
    order: MonomialOrder
    chain: list
    points: PointSet
    k: int | None = None

    def __post_init__(self):
        self.chain = [tuple(M) for M in self.chain]
        if not self.chain:
            raise EmptyInput("the chain needs at least one monomial")
        m = self.order.nvars
        if any(len(M) != m for M in self.chain):
            raise DimensionMismatch(f"chain monomials must have {m} variables")
        if not isinstance(self.points, PointSet):
            self.points = PointSet(self.field, self.points, nvars=m)
        if self.points.nvars is not None and self.points.nvars != m:
            raise DimensionMismatch(f"points have {self.points.nvars} coordinates, order has {m} variables")
        box = BoxRegion.square(self.field.q, m) if self.field.is_finite else None
        if box is not None:
            for M in self.chain:
                if M not in box:
                    raise ChainLeavesBox(f"{render_monomial(M)} has an exponent of at least q={self.field.q}")
        if not is_consecutive(self.order, self.chain, box):
            raise NotConsecutive("chain monomials must be consecutive under the ordering")
        if self.k is not None and not 1 <= self.k <= self.t:
            raise KOutOfRange(f"k={self.k} outside 1..{self.t}")

    @property
    def t(self) -> int:
        return len(self.chain)

    @property
    def m(self) -> int:
        return self.order.nvars

    def grid(self) -> CartesianGrid:
        """The Cartesian grid the points are embedded in."""
        F = self.field
        if F.is_finite:
            return CartesianGrid.full(F, self.m)
        size = mu(self.chain)
        coords = []
        for j in range(self.m):
            A = list(dict.fromkeys(P[j] for P in self.points))
            fresh = (F.from_int(i) for i in itertools.count())
            while len(A) < size:
                b = next(fresh)
                if b not in A:
                    A.append(b)
            coords.append(tuple(A))
        return CartesianGrid(F, tuple(coords))


def guarantee_check(problem: InterpolationProblem, k: int | None = None):
    """(threshold, satisfied): threshold is the least mu over (t-k+1)-subsets of the chain."""
    k = problem.k if k is None else k
    if k is None or not 1 <= k <= problem.t:
        raise KOutOfRange(f"k={k} outside 1..{problem.t}")
    size = problem.t - k + 1
    threshold = min(mu(sub) for sub in itertools.combinations(problem.chain, size))
    return threshold, len(problem.points) < threshold


def _basis_monomials(problem: InterpolationProblem, box: BoxRegion):
    top = problem.order.key(problem.chain[-1])
    if problem.order.graded:
        d = degree(problem.chain[-1])
        cands = (N for N in box if sum(N) <= d)
    else:
        cands = iter(box)
    return problem.order.sorted(N for N in cands if problem.order.key(N) <= top)


def vanishing_polynomials(problem: InterpolationProblem):
    """Monic polynomials vanishing on A, one for each attainable chain monomial, in chain order.

    The left null space of the evaluation matrix on A, echelonized so that the
    last nonzero coordinate (in increasing order) is distinct per row, has as
    leading monomials exactly the leading monomials of all box-supported
    polynomials below the top of the chain that vanish on A.
    """
    F = problem.field
    box = problem.grid().box
    monos = _basis_monomials(problem, box)
    pts = list(problem.points)
    if pts:
        polys = [Polynomial.monomial(F, N) for N in monos]
        E = np.stack(evaluate_many(polys, pts))
        Y = linalg.left_nullspace(F, E)
    else:
        Y = F.array(np.eye(len(monos), dtype=np.int64)) if F.is_finite else _rational_eye(F, len(monos))
    if Y.shape[0] == 0:
        return []
    R, last = linalg.reverse_echelon(F, Y)
    wanted = set(problem.chain)
    out = {}
    for row, c in zip(R, last):
        lm = monos[c]
        if lm in wanted:
            terms = {monos[i]: row[i] for i in np.nonzero(row != 0)[0]}
            out[lm] = Polynomial(F, problem.m, terms).monic(problem.order)
    return [out[M] for M in problem.chain if M in out]


def _rational_eye(F, n):
    E = F.zeros((n, n))
    for i in range(n):
        E[i, i] = F.one
    return E


def _verify(problem: InterpolationProblem, polys):
    pts = list(problem.points)
    lms = [f.leading_monomial(problem.order) for f in polys]
    if len(set(lms)) != len(lms) or any(M not in problem.chain for M in lms):
        raise InvariantViolation("leading monomials are not distinct chain members")
    if pts and polys:
        for v in evaluate_many(polys, pts):
            if np.any(v != 0):
                raise InvariantViolation("a constructed polynomial does not vanish on A")
    if problem.field.is_finite:
        box = BoxRegion.square(problem.field.q, problem.m)
        if any(M not in box for f in polys for M in f.terms):
            raise InvariantViolation("a constructed polynomial leaves the box")


def interpolate(problem: InterpolationProblem, k: int | None = None):
    """k monic polynomials vanishing on A with pairwise distinct chain leading monomials."""
    k = problem.k if k is None else k
    threshold, satisfied = guarantee_check(problem, k)
    polys = vanishing_polynomials(problem)
    _verify(problem, polys)
    if len(polys) < k:
        if satisfied:
            raise InvariantViolation(
                f"#A={len(problem.points)} < {threshold} but only {len(polys)} of {k} polynomials exist"
            )
        raise GuaranteeUnmetAndConstructionFailed(
            f"only {len(polys)} of the requested {k} polynomials exist", len(polys), polys
        )
    return polys[:k]


def _grid_indices(problem: InterpolationProblem, grid: CartesianGrid):
    return sorted(grid.index(P) for P in problem.points)


def capacity(problem: InterpolationProblem) -> int:
    """Number of chain monomials attainable as leading monomials of polynomials
    vanishing on A, computed directly and through the dual codes."""
    F = problem.field
    if not F.is_finite:
        raise InfiniteField("capacity needs a finite field")
    grid = problem.grid()
    C1, C2 = chain_codes(grid, problem.order, problem.chain)
    A = _grid_indices(problem, grid)
    Abar = sorted(set(range(grid.n)) - set(A))
    direct = supported_subcode(C1, Abar).dim - supported_subcode(C2, Abar).dim
    dual = problem.t - (supported_subcode(dual_code(C2), A).dim - supported_subcode(dual_code(C1), A).dim)
    if direct != dual:
        raise InvariantViolation(f"capacity routes disagree: {direct} vs {dual}")
    return direct


def sharpness_witness(field: FieldSpec, order: MonomialOrder, chain, k: int, budget: int = DEFAULT_BUDGET):
    """A point set of the least size on which fewer than k of the polynomials exist."""
    if not field.is_finite:
        raise InfiniteField("sharpness_witness needs a finite field")
    problem = InterpolationProblem(field, order, chain, PointSet(field, (), nvars=order.nvars), k)
    grid = problem.grid()
    C1, C2 = chain_codes(grid, order, problem.chain)
    size, support = rghw_witness(dual_code(C2), dual_code(C1), problem.t - k + 1, budget)
    return PointSet(field, [grid.points[i] for i in support], nvars=order.nvars)


def tao_bound(field: FieldSpec, m: int, d: int) -> int:
    """Point sets below this size carry a nonzero polynomial of degree at most d."""
    if field.is_finite:
        return rm_dimension(BoxRegion.square(field.q, m), d)
    return math.comb(d + m, m)


def tao_lemma_check(field: FieldSpec, m: int, d: int, points) -> Polynomial:
    """A nonzero polynomial of total degree at most d vanishing on the points."""
    if d < 0:
        raise KOutOfRange(f"degree {d} must be non-negative")
    pts = points if isinstance(points, PointSet) else PointSet(field, points, nvars=m)
    bound = tao_bound(field, m, d)
    if len(pts) >= bound:
        raise CardinalityTooLarge(f"#A={len(pts)} is not below {bound}")
    if len(pts) == 0:
        return Polynomial.constant(field, m)
    order = MonomialOrder.natural("deglex", m)
    if field.is_finite:
        d = min(d, m * (field.q - 1))
        box = BoxRegion.square(field.q, m)
        chain = order.sorted(N for N in box if sum(N) == d)
    else:
        chain = order.sorted(_degree_level(m, d))
    problem = InterpolationProblem(field, order, chain, pts, 1)
    f = interpolate(problem)[0]
    if f.degree() > d:
        raise InvariantViolation("constructed polynomial exceeds the degree")
    return f


def _degree_level(m: int, d: int):
    return [M for M in itertools.product(range(d + 1), repeat=m) if sum(M) == d]
