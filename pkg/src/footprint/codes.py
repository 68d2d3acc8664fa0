"""Linear codes over finite fields: evaluation codes on grids, duals,
shortening/projection, Forney's dimension identities and relative generalized
Hamming weights (RGHW).

Coordinate indices are 0-based here; the CLI converts to and from 1-based.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from . import linalg
from .errors import (
    IndexOutOfRange,
    InfiniteField,
    InvariantViolation,
    KOutOfRange,
    LengthMismatch,
    MonomialOutsideBox,
    NotDivisorClosed,
    NotNested,
    SearchBudgetExceeded,
    SpecMismatch,
)
from .field import FieldSpec, render_field
from .monomial import BoxRegion, MonomialOrder, render_monomial, sigma
from .poly import CartesianGrid, Polynomial, evaluate_many

DEFAULT_BUDGET = 10**7
_CHUNK = 1 << 16


class LinearCode:
    """Row space of a matrix, kept in reduced row echelon form."""

    def __init__(self, field: FieldSpec, n: int, rows=()):
        self.field = field
        self.n = n
        M = field.array(rows) if len(rows) else field.zeros((0, n))
        if M.ndim == 1:
            M = M.reshape(1, -1)
        if M.shape[1] != n:
            raise LengthMismatch(f"rows of length {M.shape[1]} for a code of length {n}")
        if M.shape[0]:
            self.basis, self.pivots = linalg.rref(field, M)
        else:
            self.basis, self.pivots = M[:0], []

    @classmethod
    def full(cls, field, n):
        eye = field.zeros((n, n))
        for i in range(n):
            eye[i, i] = field.one
        return cls(field, n, eye)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (
            self.field == other.field
            and self.n == other.n
            and self.basis.shape == other.basis.shape
            and bool(np.all(self.basis == other.basis))
        )

    def __hash__(self):
        return hash((self.field, self.n, self.basis.tobytes() if self.field.is_finite else str(self.basis)))

    def __contains__(self, v):
        v = self.field.array(v).reshape(1, -1)
        return linalg.rank(self.field, np.concatenate([self.basis, v])) == self.dim

    def contains_code(self, other: LinearCode) -> bool:
        if other.dim == 0:
            return True
        return linalg.rank(self.field, np.concatenate([self.basis, other.basis])) == self.dim

    def __repr__(self):
        return f"LinearCode(n={self.n}, k={self.dim}, field={render_field(self.field)})"

    def to_json(self):
        F = self.field
        return {
            "n": self.n,
            "field": render_field(F),
            "rows": [[F.render(x if F.kind == "rational" else int(x)) for x in row] for row in self.basis],
        }


def _check_finite(F):
    if not F.is_finite:
        raise InfiniteField("this operation needs a finite field")


def evaluation_matrix(grid: CartesianGrid, monos):
    """Rows ev(M) for each monomial, columns in grid point order."""
    F = grid.field
    monos = list(monos)
    if not monos:
        return F.zeros((0, grid.n))
    polys = [Polynomial.monomial(F, M) for M in monos]
    return np.stack(evaluate_many(polys, grid.points))


def eval_code(grid: CartesianGrid, W) -> LinearCode:
    """E(W): the span of the evaluation vectors of W on the grid."""
    _check_finite(grid.field)
    W = [tuple(M) for M in W]
    for M in W:
        if M not in grid.box:
            raise MonomialOutsideBox(f"{render_monomial(M)} is outside the grid box {grid.sizes}")
    return LinearCode(grid.field, grid.n, evaluation_matrix(grid, W))


def evaluation_basis(grid: CartesianGrid, order: MonomialOrder):
    """Box monomials sorted by the ordering and their evaluation vectors."""
    monos = order.sorted(grid.box)
    return monos, evaluation_matrix(grid, monos)


def chain_codes(grid: CartesianGrid, order: MonomialOrder, chain):
    """(C1, C2): spans of ev(N) for box monomials N <= M_t and N < M_1."""
    key_lo = order.key(tuple(chain[0]))
    key_hi = order.key(tuple(chain[-1]))
    box = grid.box
    grid.box.check(*[tuple(M) for M in chain])
    upper = [N for N in box if order.key(N) <= key_hi]
    lower = [N for N in box if order.key(N) < key_lo]
    return eval_code(grid, upper), eval_code(grid, lower)


def dual_code(C: LinearCode) -> LinearCode:
    """Null space under the standard bilinear form."""
    if C.dim == 0:
        return LinearCode.full(C.field, C.n)
    return LinearCode(C.field, C.n, linalg.nullspace(C.field, C.basis))


def is_divisor_closed(W) -> bool:
    Ws = {tuple(M) for M in W}
    for M in Ws:
        for j, a in enumerate(M):
            if a and M[:j] + (a - 1,) + M[j + 1 :] not in Ws:
                return False
    return True


def monomial_dual(box: BoxRegion, W):
    """Box minus the reflections apex/M of the members of a divisor-closed W."""
    W = [tuple(M) for M in W]
    box.check(*W)
    if not is_divisor_closed(W):
        raise NotDivisorClosed("W must contain every divisor of its members")
    reflected = {tuple(c - 1 - a for a, c in zip(M, box.caps)) for M in W}
    return [N for N in box if N not in reflected]


def _check_indices(C: LinearCode, A):
    A = sorted(set(int(i) for i in A))
    if A and (A[0] < 0 or A[-1] >= C.n):
        raise IndexOutOfRange(f"index set {A} outside 0..{C.n - 1}")
    return A


def supported_subcode(C: LinearCode, A) -> LinearCode:
    """C_A: codewords vanishing outside A."""
    A = _check_indices(C, A)
    F = C.field
    outside = [i for i in range(C.n) if i not in set(A)]
    if C.dim == 0:
        return LinearCode(F, C.n)
    if not outside:
        return C
    Y = linalg.left_nullspace(F, C.basis[:, outside])
    if Y.shape[0] == 0:
        return LinearCode(F, C.n)
    return LinearCode(F, C.n, linalg.matmul(F, Y, C.basis))


def projection(C: LinearCode, A) -> LinearCode:
    """P_A(C): codewords with coordinates outside A set to zero."""
    A = _check_indices(C, A)
    G = C.basis.copy()
    mask = np.ones(C.n, dtype=bool)
    mask[A] = False
    G[:, mask] = C.field.zero
    return LinearCode(C.field, C.n, G)


def forney_check(C: LinearCode, A, dual: LinearCode | None = None) -> dict:
    """Both duality identities for (C, A); raises InvariantViolation if either fails.

    ``dual`` may pass a precomputed dual of C when checking many index sets.
    """
    A = _check_indices(C, A)
    Abar = [i for i in range(C.n) if i not in set(A)]
    dims = {
        "dim_C": C.dim,
        "dim_C_Abar": supported_subcode(C, Abar).dim,
        "dim_P_A": projection(C, A).dim,
        "dim_Cdual_A": supported_subcode(dual if dual is not None else dual_code(C), A).dim,
        "size_A": len(A),
    }
    dims["forney1"] = dims["dim_C"] == dims["dim_C_Abar"] + dims["dim_P_A"]
    dims["forney2"] = dims["size_A"] == dims["dim_P_A"] + dims["dim_Cdual_A"]
    if not (dims["forney1"] and dims["forney2"]):
        raise InvariantViolation(f"Forney identity failed: {dims}")
    return dims


# -- relative generalized Hamming weights -------------------------------------------

def _check_pair(C1: LinearCode, C2: LinearCode):
    if C1.field != C2.field or C1.n != C2.n:
        raise SpecMismatch("codes differ in field or length")
    _check_finite(C1.field)
    if not C1.contains_code(C2):
        raise NotNested("C2 must be a subcode of C1")
    return C1.dim - C2.dim


def _codeword_support_counts(C: LinearCode, budget: int):
    """count[S] = number of codewords whose support is exactly S (bitmask)."""
    F = C.field
    q, k, n = F.q, C.dim, C.n
    if q**k > budget:
        raise SearchBudgetExceeded(f"{q}^{k} codewords exceed the budget {budget}")
    weights = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
    counts = np.zeros(1 << n, dtype=np.int64)
    total = q**k
    powers = q ** np.arange(k, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        if k == 0:
            masks = np.zeros(len(idx), dtype=np.int64)
        else:
            coeffs = (idx[:, None] // powers[None, :]) % q
            words = linalg.matmul(F, coeffs, C.basis)
            masks = (words != 0).astype(np.int64) @ weights
        counts += np.bincount(masks, minlength=1 << n)
    return counts


def _subspace_dims(C: LinearCode, budget: int):
    """dim C_S for every coordinate subset S, indexed by bitmask.

    When C is more than half the space the dual is enumerated instead, using
    dim C_S = |S| - dim C^perp + dim (C^perp)_(complement of S).
    """
    n = C.n
    if 2 * C.dim > n:
        D = dual_code(C)
        dims = _lattice_dims(D, budget)
        masks = np.arange(1 << n, dtype=np.int64)
        return _popcounts(n) - D.dim + dims[((1 << n) - 1) ^ masks]
    return _lattice_dims(C, budget)


def _lattice_dims(C: LinearCode, budget: int):
    n = C.n
    z = _codeword_support_counts(C, budget)
    for i in range(n):
        z = z.reshape(-1, 2, 1 << i)
        z[:, 1, :] += z[:, 0, :]
    z = z.reshape(-1)
    q = C.field.q
    dims = np.rint(np.log(z) / math.log(q)).astype(np.int64)
    if not np.all(q ** dims == z):
        raise InvariantViolation("subcode sizes are not powers of q")
    return dims


def _popcounts(n: int):
    s = np.arange(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        pc += (s >> i) & 1
    return pc


def rghw_profile(C1: LinearCode, C2: LinearCode, budget: int = DEFAULT_BUDGET):
    """[(M_k(C1, C2), witness support) for k = 1..t].

    Exhaustive over all codewords (of each code or of its dual, whichever is
    smaller) and all coordinate subsets: M_k is the least
    |S| with dim (C1)_S - dim (C2)_S >= k, and any such S of least size is the
    support of a qualifying k-dimensional D.
    """
    t = _check_pair(C1, C2)
    n = C1.n
    if (1 << n) > budget:
        raise SearchBudgetExceeded(f"2^{n} supports exceed the budget {budget}")
    gain = _subspace_dims(C1, budget) - _subspace_dims(C2, budget)
    pc = _popcounts(n)
    out = []
    for k in range(1, t + 1):
        ok = np.nonzero(gain >= k)[0]
        best = ok[np.argmin(pc[ok] * (1 << n) + ok)]
        out.append((int(pc[best]), [i for i in range(n) if (int(best) >> i) & 1]))
    return out


def rghw_witness(C1: LinearCode, C2: LinearCode, k: int, budget: int = DEFAULT_BUDGET):
    t = _check_pair(C1, C2)
    if not 1 <= k <= t:
        raise KOutOfRange(f"k={k} outside 1..{t}")
    return rghw_profile(C1, C2, budget)[k - 1]


def rghw_bruteforce(C1: LinearCode, C2: LinearCode, k: int, budget: int = DEFAULT_BUDGET) -> int:
    """M_k(C1, C2) = min |Supp D| over k-dim D in C1 meeting C2 only in 0."""
    return rghw_witness(C1, C2, k, budget)[0]


def _gaussian_binomial(n: int, k: int, q: int) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _rref_matrices(F: FieldSpec, k: int, ncols: int):
    """Every k x ncols reduced echelon matrix of rank k."""
    q = F.q
    for pivots in itertools.combinations(range(ncols), k):
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, ncols) if c not in pivots]
        for values in itertools.product(range(q), repeat=len(free)):
            M = np.zeros((k, ncols), dtype=np.int64)
            for r, p in enumerate(pivots):
                M[r, p] = 1
            for (r, c), v in zip(free, values):
                M[r, c] = v
            yield M


def rghw_subspaces(C1: LinearCode, C2: LinearCode, k: int, budget: int = DEFAULT_BUDGET) -> int:
    """M_k(C1, C2) by visiting every k-dimensional subspace of C1 once."""
    t = _check_pair(C1, C2)
    if not 1 <= k <= t:
        raise KOutOfRange(f"k={k} outside 1..{t}")
    F = C1.field
    count = _gaussian_binomial(C1.dim, k, F.q)
    if count > budget:
        raise SearchBudgetExceeded(f"{count} subspaces exceed the budget {budget}")
    best = None
    for R in _rref_matrices(F, k, C1.dim):
        D = linalg.matmul(F, F.array(R), C1.basis)
        if C2.dim and linalg.rank(F, np.concatenate([D, C2.basis])) < k + C2.dim:
            continue
        w = int(np.any(D != 0, axis=0).sum())
        if best is None or w < best:
            best = w
    return best


def rghw_cartesian(grid: CartesianGrid | BoxRegion, chain, k: int) -> int:
    """min over k-subsets of the chain of sigma over the grid box."""
    box = grid.box if isinstance(grid, CartesianGrid) else grid
    chain = [tuple(M) for M in chain]
    if len(set(chain)) != len(chain):
        raise ValueError("chain monomials must be distinct")
    if not 1 <= k <= len(chain):
        raise KOutOfRange(f"k={k} outside 1..{len(chain)}")
    box.check(*chain)
    return min(sigma(box, sub) for sub in itertools.combinations(chain, k))
