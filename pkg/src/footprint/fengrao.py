"""Order-bound machinery for an ordered basis of F^n with the componentwise product.

Positions returned by :func:`rho_bar` and :func:`m_value` and the index sets of
a profile are 1-based filtration positions; ``rho_bar`` of the zero vector is 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg
from .codes import LinearCode, evaluation_basis
from .errors import (
    EmptyInput,
    InvariantViolation,
    IndexOutOfRange,
    KOutOfRange,
    LengthMismatch,
    NotABasis,
    ZeroSubspace,
    ZeroVector,
)
from .field import FieldSpec
from .monomial import MonomialOrder
from .poly import CartesianGrid


@dataclass(eq=False)
class OrderedBasisPair:
    """An ordered basis ``B`` of F^n and a sequence ``Bprime`` of n vectors
    (``B`` itself unless given)."""

    field: FieldSpec
    B: np.ndarray
    Bprime: np.ndarray | None = None
    monomials: list | None = field(default=None, repr=False)

    def __post_init__(self):
        F = self.field
        self.B = F.array(self.B)
        n = self.B.shape[0]
        if self.B.shape != (n, n):
            raise NotABasis(f"B must be n x n, got {self.B.shape}")
        self.Bprime = self.B if self.Bprime is None else F.array(self.Bprime)
        if self.Bprime.shape != (n, n):
            raise LengthMismatch("B' must hold n vectors of length n")
        self._inv = linalg.inverse(F, self.B)

    @classmethod
    def from_grid(cls, grid: CartesianGrid, order: MonomialOrder) -> OrderedBasisPair:
        """Evaluation vectors of the grid box monomials, sorted by the ordering."""
        monos, B = evaluation_basis(grid, order)
        return cls(grid.field, B, monomials=monos)

    @property
    def n(self) -> int:
        return self.B.shape[0]

    def coordinates(self, V):
        """Rows X with X @ B = V."""
        return linalg.matmul(self.field, V, self._inv)

    @cached_property
    def products(self):
        """R[i, j] = rho_bar(b_i * b'_j), 0-based i, j."""
        F = self.field
        n = self.n
        prods = F.vmul(self.B[:, None, :], self.Bprime[None, :, :]).reshape(n * n, n)
        X = self.coordinates(prods)
        nz = X != 0
        last = np.where(nz.any(axis=1), n - np.argmax(nz[:, ::-1], axis=1), 0)
        return last.reshape(n, n)

    @cached_property
    def owb_table(self):
        """W[i, j] is True when (i+1, j+1) is one-way well-behaving."""
        R = self.products
        W = np.zeros_like(R, dtype=bool)
        W[0, :] = True
        running = R[0].copy()
        for i in range(1, self.n):
            W[i] = running < R[i]
            running = np.maximum(running, R[i])
        return W

    def profile(self) -> FRProfile:
        return fr_profile(self)


def _vec(pair_or_field, c):
    F = pair_or_field.field if isinstance(pair_or_field, OrderedBasisPair) else pair_or_field
    return F.array(c).reshape(1, -1)


def rho_bar(pair: OrderedBasisPair, c) -> int:
    """Least i with c in span(b_1..b_i); 0 for the zero vector."""
    v = _vec(pair, c)
    if v.shape[1] != pair.n:
        raise LengthMismatch(f"vector of length {v.shape[1]}, basis of size {pair.n}")
    x = pair.coordinates(v)[0]
    nz = np.nonzero(x != 0)[0]
    return int(nz[-1]) + 1 if len(nz) else 0


def m_value(pair: OrderedBasisPair, c) -> int:
    """Least m with c . b_m nonzero."""
    v = _vec(pair, c)
    if v.shape[1] != pair.n:
        raise LengthMismatch(f"vector of length {v.shape[1]}, basis of size {pair.n}")
    dots = linalg.matmul(pair.field, v, pair.B.T)[0]
    nz = np.nonzero(dots != 0)[0]
    if not len(nz):
        raise ZeroVector("c is orthogonal to every basis vector")
    return int(nz[0]) + 1


def owb(pair: OrderedBasisPair, i: int, j: int) -> bool:
    """rho_bar(b_u * b'_j) < rho_bar(b_i * b'_j) for every u < i (1-based)."""
    if not (1 <= i <= pair.n and 1 <= j <= pair.n):
        raise IndexOutOfRange(f"({i}, {j}) outside 1..{pair.n}")
    return bool(pair.owb_table[i - 1, j - 1])


@dataclass(frozen=True)
class FRProfile:
    """``V[l]`` and ``Lam[i]`` for 1-based l, i (index 0 unused)."""

    n: int
    V: tuple
    Lam: tuple


def fr_profile(pair: OrderedBasisPair) -> FRProfile:
    n = pair.n
    R = pair.products
    W = pair.owb_table
    V = [set() for _ in range(n + 1)]
    Lam = [set() for _ in range(n + 1)]
    for i, j in zip(*np.nonzero(W)):
        ell = int(R[i, j])
        if ell:
            V[ell].add(int(i) + 1)
            Lam[int(i) + 1].add(ell)
    for ell in range(1, n + 1):
        for i in V[ell]:
            if ell not in Lam[i]:
                raise InvariantViolation("profile is inconsistent")
    return FRProfile(n, tuple(frozenset(s) for s in V), tuple(frozenset(s) for s in Lam))


def _check_set(profile, idx):
    idx = [int(i) for i in idx]
    if not idx:
        raise EmptyInput("need at least one index")
    if any(not 1 <= i <= profile.n for i in idx):
        raise IndexOutOfRange(f"indices {idx} outside 1..{profile.n}")
    return idx


def mu_bar(profile: FRProfile, ls) -> int:
    ls = _check_set(profile, ls)
    return len(set().union(*(profile.V[ell] for ell in ls)) | set(ls))


def sigma_bar(profile: FRProfile, idx) -> int:
    idx = _check_set(profile, idx)
    return len(set().union(*(profile.Lam[i] for i in idx)) | set(idx))


def rho_bar_set(pair: OrderedBasisPair, D: LinearCode):
    """rho_bar(D): the positions rho_bar takes on the nonzero vectors of D."""
    X = pair.coordinates(D.basis)
    _, last = linalg.reverse_echelon(pair.field, X)
    return [c + 1 for c in last]


def m_set(pair: OrderedBasisPair, D: LinearCode):
    """m(D): the values m takes on the nonzero vectors of D."""
    Y = linalg.matmul(pair.field, D.basis, pair.B.T)
    _, pivots = linalg.rref(pair.field, Y)
    return [c + 1 for c in pivots]


def weight_bounds(pair: OrderedBasisPair, D: LinearCode, profile: FRProfile | None = None):
    """(sigma_bar(rho_bar(D)), mu_bar(m(D))); both are lower bounds on |Supp D|."""
    if D.dim == 0:
        raise ZeroSubspace("D must be nonzero")
    if D.n != pair.n:
        raise LengthMismatch(f"code of length {D.n}, basis of size {pair.n}")
    profile = profile or fr_profile(pair)
    return sigma_bar(profile, rho_bar_set(pair, D)), mu_bar(profile, m_set(pair, D))


def rghw_lower_bounds(pair_or_profile, k2: int, k1: int, k: int):
    """Minima of sigma_bar and mu_bar over k-subsets of (k2, k1]; they bound
    M_k(C1, C2) and M_k(C2^perp, C1^perp) for C_i spanned by the first k_i vectors."""
    profile = pair_or_profile if isinstance(pair_or_profile, FRProfile) else fr_profile(pair_or_profile)
    if not 0 <= k2 < k1 <= profile.n:
        raise KOutOfRange(f"need 0 <= k2 < k1 <= {profile.n}")
    if not 1 <= k <= k1 - k2:
        raise KOutOfRange(f"k={k} outside 1..{k1 - k2}")
    subsets = list(itertools.combinations(range(k2 + 1, k1 + 1), k))
    return (
        min(sigma_bar(profile, s) for s in subsets),
        min(mu_bar(profile, s) for s in subsets),
    )
