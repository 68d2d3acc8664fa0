"""Sparse multivariate polynomials, Cartesian grids and point sets."""

from __future__ import annotations

import itertools
import re
from collections import namedtuple
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicatePoints,
    MonomialOutsideBox,
    ParseError,
    SpecMismatch,
    ZeroGenerator,
    ZeroPolynomial,
)
from .field import FieldElem, FieldSpec, parse_element, render_element
from .monomial import (
    BoxRegion,
    MonomialOrder,
    divides,
    mono_div,
    mono_mul,
    parse_monomial,
    render_monomial,
)


def _raw(field: FieldSpec, x):
    if isinstance(x, FieldElem):
        if x.spec != field:
            raise SpecMismatch(f"{x.spec} vs {field}")
        return x.value
    if isinstance(x, str):
        return parse_element(field, x)
    return field.normalize(x) if field.kind != "prime" else field.from_int(x)


class Polynomial:
    """A polynomial as a map from exponent tuples to nonzero raw coefficients."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: FieldSpec, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        for M, c in (terms or {}).items():
            M = tuple(int(a) for a in M)
            if len(M) != nvars:
                raise DimensionMismatch(f"term {M} in a polynomial of {nvars} variables")
            c = _raw(field, c)
            if c != 0:
                clean[M] = c
        self.terms = clean

    @classmethod
    def _trusted(cls, field, nvars, terms):
        p = cls.__new__(cls)
        p.field = field
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, field, nvars):
        return cls._trusted(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, c=1):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, field, M, c=1):
        return cls(field, len(M), {tuple(M): c})

    @classmethod
    def variable(cls, field, nvars, j):
        M = tuple(1 if i == j else 0 for i in range(nvars))
        return cls._trusted(field, nvars, {M: field.one})

    # -- structure --

    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return list(self.terms)

    def coeff(self, M):
        return self.terms.get(tuple(M), self.field.zero)

    def degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no degree")
        return max(sum(M) for M in self.terms)

    def partial_degrees(self):
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no degree")
        return tuple(max(M[j] for M in self.terms) for j in range(self.nvars))

    def leading_monomial(self, order: MonomialOrder):
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no leading monomial")
        return order.max(self.terms)

    def leading_coefficient(self, order: MonomialOrder):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder) -> Polynomial:
        return self.scale(self.field.inv(self.leading_coefficient(order)))

    # -- arithmetic --

    def _same(self, other):
        if not isinstance(other, Polynomial):
            return False
        if other.field != self.field:
            raise SpecMismatch(f"{self.field} vs {other.field}")
        if other.nvars != self.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
        return True

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.field, self.nvars, self.terms) == (other.field, other.nvars, other.terms)

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        F = self.field
        out = dict(self.terms)
        for M, c in other.terms.items():
            s = F.add(out.get(M, F.zero), c)
            if s == 0:
                out.pop(M, None)
            else:
                out[M] = s
        return Polynomial._trusted(F, self.nvars, out)

    def __neg__(self):
        F = self.field
        return Polynomial._trusted(F, self.nvars, {M: F.neg(c) for M, c in self.terms.items()})

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> Polynomial:
        F = self.field
        c = _raw(F, c)
        if c == 0:
            return Polynomial.zero(F, self.nvars)
        return Polynomial._trusted(F, self.nvars, {M: F.mul(a, c) for M, a in self.terms.items()})

    def mul_monomial(self, K, c=None) -> Polynomial:
        F = self.field
        out = {mono_mul(M, K): a for M, a in self.terms.items()}
        p = Polynomial._trusted(F, self.nvars, out)
        return p if c is None else p.scale(c)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._same(other)
            F = self.field
            out = {}
            for M, a in self.terms.items():
                for N, b in other.terms.items():
                    K = mono_mul(M, N)
                    s = F.add(out.get(K, F.zero), F.mul(a, b))
                    if s == 0:
                        out.pop(K, None)
                    else:
                        out[K] = s
            return Polynomial._trusted(F, self.nvars, out)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Polynomial.constant(self.field, self.nvars)
        for _ in range(n):
            out = out * self
        return out

    # -- evaluation --

    def evaluate(self, point):
        """Value at ``point`` as a raw field element."""
        F = self.field
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point of length {len(point)} for {self.nvars} variables")
        x = [_raw(F, v) for v in point]
        acc = F.zero
        for M, c in self.terms.items():
            t = c
            for v, a in zip(x, M):
                if a:
                    t = F.mul(t, F.pow(v, a))
            acc = F.add(acc, t)
        return acc

    def evaluate_on(self, points):
        """Values at every point, in the given order, as a numpy array."""
        return evaluate_many([self], points)[0]

    # -- text --

    def render(self, order: MonomialOrder | None = None) -> str:
        if not self.terms:
            return "0"
        order = order or MonomialOrder.natural("deglex", self.nvars)
        F = self.field
        text = ""
        for M in reversed(order.sorted(self.terms)):
            c = render_element(F, self.terms[M])
            sign = "+"
            if re.fullmatch(r"-\d+(/\d+)?", c):
                sign, c = "-", c[1:]
            elif any(ch in c for ch in "+-x"):
                c = f"({c})"
            mono = render_monomial(M)
            if mono == "1":
                term = c
            elif c == "1":
                term = mono
            else:
                term = f"{c}*{mono}"
            if not text:
                text = term if sign == "+" else f"-{term}"
            else:
                text += f" {sign} {term}"
        return text

    def __repr__(self):
        return f"Polynomial({self.render()!r} over {self.field})"

    __str__ = render

    def to_json(self):
        return {
            "terms": [
                {"exp": list(M), "coef": render_element(self.field, c)}
                for M, c in sorted(self.terms.items())
            ]
        }

    @classmethod
    def from_json(cls, field: FieldSpec, nvars: int, data) -> Polynomial:
        if isinstance(data, str):
            return parse_polynomial(field, nvars, data)
        F = field
        out = {}
        for term in data["terms"]:
            M = parse_monomial(term["exp"], nvars)
            out[M] = F.add(out.get(M, F.zero), _raw(F, term["coef"]))
        return cls(F, nvars, out)


def _split_top(s: str, seps: str):
    """Split at separators outside parentheses, keeping the separator."""
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in seps and cur.strip() not in ("", "*"):
            parts.append(cur)
            cur = ch
        else:
            cur += ch
    parts.append(cur)
    return parts


def parse_polynomial(field: FieldSpec, nvars: int, text: str) -> Polynomial:
    """Parse ``"X1^3*X2 - 2*X2^2 + (x+1)*X1"``; parenthesised coefficients are field elements."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    F = field
    out = {}
    for term in _split_top(s, "+-"):
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("+-")
        if not term:
            raise ParseError(f"bad polynomial {text!r}")
        c = F.one
        exps = [0] * nvars
        for factor in _split_top(term, "*"):
            factor = factor.lstrip("*")
            if factor.startswith("(") and factor.endswith(")"):
                c = F.mul(c, parse_element(F, factor[1:-1]))
            elif re.fullmatch(r"[Xx]\d+(\^\d+)?", factor):
                M = parse_monomial(factor, nvars)
                exps = [a + b for a, b in zip(exps, M)]
            elif re.fullmatch(r"\d+(/\d+)?", factor):
                c = F.mul(c, parse_element(F, factor))
            else:
                raise ParseError(f"bad factor {factor!r} in {text!r}")
        if sign < 0:
            c = F.neg(c)
        M = tuple(exps)
        out[M] = F.add(out.get(M, F.zero), c)
    return Polynomial(F, nvars, out)


def evaluate_many(polys, points):
    """Evaluation vectors of several polynomials on the same points."""
    polys = list(polys)
    if not polys:
        return []
    F = polys[0].field
    m = polys[0].nvars
    pts = [[_raw(F, v) for v in P] for P in points]
    for P in pts:
        if len(P) != m:
            raise DimensionMismatch(f"point of length {len(P)} for {m} variables")
    n = len(pts)
    cols = [F.array([P[j] for P in pts]) if n else F.zeros((0,)) for j in range(m)]
    power_cache = {}

    def power(j, a):
        key = (j, a)
        if key not in power_cache:
            if a == 1:
                power_cache[key] = cols[j]
            else:
                power_cache[key] = F.vmul(power(j, a - 1), cols[j])
        return power_cache[key]

    out = []
    for f in polys:
        if f.field != F or f.nvars != m:
            raise SpecMismatch("polynomials differ in field or dimension")
        acc = F.zeros((n,))
        for M, c in f.terms.items():
            t = F.array([c] * n) if n else F.zeros((0,))
            for j, a in enumerate(M):
                if a:
                    t = F.vmul(t, power(j, a))
            acc = F.vadd(acc, t)
        out.append(acc)
    return out


def evaluate(F: Polynomial, point) -> FieldElem:
    return FieldElem(F.field, F.evaluate(point))


def evaluate_on(F: Polynomial, points):
    return [FieldElem(F.field, v if F.field.kind == "rational" else int(v)) for v in F.evaluate_on(points)]


def leading_monomial(F: Polynomial, order: MonomialOrder):
    return F.leading_monomial(order)


# -- division -------------------------------------------------------------------

def reduce(F: Polynomial, generators, order: MonomialOrder) -> Polynomial:
    """Remainder of the division algorithm: the largest reducible term goes first,
    generators are tried in the given order."""
    K = F.field
    leads = []
    for g in generators:
        if g.is_zero():
            raise ZeroGenerator("cannot divide by the zero polynomial")
        L = g.leading_monomial(order)
        leads.append((L, K.inv(g.terms[L]), g))
    work = dict(F.terms)
    rem = {}
    while work:
        M = order.max(work)
        c = work[M]
        for L, inv_lc, g in leads:
            if divides(L, M):
                Q = mono_div(M, L)
                f = K.mul(c, inv_lc)
                for N, b in g.terms.items():
                    T = mono_mul(N, Q)
                    s = K.sub(work.get(T, K.zero), K.mul(f, b))
                    if s == 0:
                        work.pop(T, None)
                    else:
                        work[T] = s
                break
        else:
            rem[M] = c
            del work[M]
    return Polynomial._trusted(K, F.nvars, rem)


# -- point sets ---------------------------------------------------------------------

@dataclass(frozen=True)
class CartesianGrid:
    """A product A_1 x ... x A_m; points run row-major with the last variable fastest."""

    field: FieldSpec
    coords: tuple

    def __post_init__(self):
        F = self.field
        coords = tuple(tuple(_raw(F, b) for b in A) for A in self.coords)
        if not coords:
            raise DimensionMismatch("a grid needs at least one coordinate set")
        for A in coords:
            if not A:
                raise ValueError("coordinate sets must be non-empty")
            if len(set(A)) != len(A):
                raise DuplicatePoints(f"duplicate coordinate in {A}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def full(cls, field: FieldSpec, m: int) -> CartesianGrid:
        return cls(field, (tuple(field.elements()),) * m)

    @property
    def nvars(self) -> int:
        return len(self.coords)

    @property
    def sizes(self):
        return tuple(len(A) for A in self.coords)

    @property
    def box(self) -> BoxRegion:
        return BoxRegion(self.sizes)

    @property
    def n(self) -> int:
        return len(self.box)

    @cached_property
    def points(self):
        return list(itertools.product(*self.coords))

    @cached_property
    def _index(self):
        return {P: i for i, P in enumerate(self.points)}

    def index(self, point) -> int:
        return self._index[tuple(_raw(self.field, v) for v in point)]

    def __contains__(self, point):
        return tuple(point) in self._index


@dataclass(frozen=True)
class PointSet:
    """A duplicate-free sequence of points of one dimension."""

    field: FieldSpec
    points: tuple
    nvars: int | None = None

    def __post_init__(self):
        F = self.field
        pts = tuple(tuple(_raw(F, v) for v in P) for P in self.points)
        dims = {len(P) for P in pts}
        if self.nvars is not None:
            dims.add(self.nvars)
        if len(dims) > 1:
            raise DimensionMismatch(f"points of mixed dimension {sorted(dims)}")
        if len(set(pts)) != len(pts):
            raise DuplicatePoints("point set contains duplicates")
        object.__setattr__(self, "points", pts)
        if self.nvars is None and pts:
            object.__setattr__(self, "nvars", len(pts[0]))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


# -- grid ideals and witnesses ----------------------------------------------------

def _linear_product(F, m, j, roots):
    x = Polynomial.variable(F, m, j)
    out = Polynomial.constant(F, m)
    for b in roots:
        out = out * (x - Polynomial.constant(F, m, b))
    return out


def grid_generators(grid: CartesianGrid):
    """G_j = prod over b in A_j of (X_j - b)."""
    return [_linear_product(grid.field, grid.nvars, j, A) for j, A in enumerate(grid.coords)]


def witness_H(grid: CartesianGrid, N) -> Polynomial:
    """prod_i prod_{j < N_i} (X_i - b_j^(i)); leading monomial N under any ordering."""
    N = tuple(N)
    if N not in grid.box:
        raise MonomialOutsideBox(f"{render_monomial(N)} is outside the grid box {grid.sizes}")
    F = grid.field
    out = Polynomial.constant(F, grid.nvars)
    for j, (a, A) in enumerate(zip(N, grid.coords)):
        out = out * _linear_product(F, grid.nvars, j, A[:a])
    return out


RootCount = namedtuple("RootCount", "roots nonroots n")


def root_count(polys, grid: CartesianGrid) -> RootCount:
    """Exhaustive count of common roots on the grid."""
    if isinstance(polys, Polynomial):
        polys = [polys]
    polys = list(polys)
    n = grid.n
    for f in polys:
        if f.nvars != grid.nvars:
            raise DimensionMismatch(f"{f.nvars}-variate polynomial on a {grid.nvars}-dimensional grid")
    if not polys:
        return RootCount(n, 0, n)
    vals = evaluate_many(polys, grid.points)
    common = np.ones(n, dtype=bool)
    for v in vals:
        common &= v == 0
    roots = int(common.sum())
    return RootCount(roots, n - roots, n)
