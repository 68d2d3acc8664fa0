"""Monomials as exponent tuples, monomial orderings, boxes, and the counting
functions mu (divisors of some input) and sigma (box multiples of some input).

A monomial in m variables is a plain ``tuple`` of m non-negative ints; ``(0,)*m``
is the monomial 1.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    ChainLeavesBox,
    DimensionMismatch,
    EmptyInput,
    MonomialOutsideBox,
    ParseError,
)

Monomial = tuple

# Inclusion-exclusion runs over 2^s subsets.
MAX_INCLUSION_EXCLUSION = 20

ORDER_KINDS = ("lex", "deglex", "degrevlex")


def one(m: int) -> Monomial:
    return (0,) * m


def degree(M: Monomial) -> int:
    return sum(M)


def _check_dims(*monos):
    m = len(monos[0])
    for N in monos:
        if len(N) != m:
            raise DimensionMismatch(f"monomials {monos[0]} and {N} differ in dimension")
    return m


def divides(M: Monomial, N: Monomial) -> bool:
    _check_dims(M, N)
    return all(a <= b for a, b in zip(M, N))


def mono_mul(M: Monomial, N: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(M, N))


def mono_div(N: Monomial, M: Monomial) -> Monomial:
    """N / M, assuming M divides N."""
    return tuple(b - a for a, b in zip(M, N))


def gcd(*monos) -> Monomial:
    return tuple(min(c) for c in zip(*monos))


def lcm(*monos) -> Monomial:
    return tuple(max(c) for c in zip(*monos))


# -- orderings -------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """``perm`` lists the variables (0-based) from least to most significant.

    ``MonomialOrder("deglex", (0, 1))`` is degree-lex with X1 < X2.
    """

    kind: str
    perm: tuple

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ParseError(f"unknown ordering {self.kind!r}")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ParseError(f"{self.perm} is not a permutation")

    @classmethod
    def natural(cls, kind: str, m: int) -> MonomialOrder:
        return cls(kind, tuple(range(m)))

    @property
    def nvars(self) -> int:
        return len(self.perm)

    @property
    def graded(self) -> bool:
        return self.kind != "lex"

    def key(self, M: Monomial):
        """Sort key; larger key means larger monomial."""
        if len(M) != len(self.perm):
            raise DimensionMismatch(f"{M} has {len(M)} variables, order has {len(self.perm)}")
        if self.kind == "lex":
            return tuple(M[v] for v in reversed(self.perm))
        if self.kind == "deglex":
            return (sum(M),) + tuple(M[v] for v in reversed(self.perm))
        return (sum(M),) + tuple(-M[v] for v in self.perm)

    def sorted(self, monos):
        return sorted(monos, key=self.key)

    def max(self, monos):
        return max(monos, key=self.key)

    def __str__(self):
        return f"{self.kind}:" + "<".join(f"X{v + 1}" for v in self.perm)


def compare(order: MonomialOrder, M: Monomial, N: Monomial) -> int:
    """-1, 0 or 1 as M is less than, equal to or greater than N."""
    _check_dims(M, N)
    a, b = order.key(M), order.key(N)
    return (a > b) - (a < b)


def parse_order(text: str, m: int | None = None) -> MonomialOrder:
    """Parse ``deglex``, ``lex:X2<X1``, ``degrevlex:X1<X2<X3``."""
    s = text.strip().replace(" ", "")
    kind, _, rest = s.partition(":")
    kind = kind.lower()
    if not rest:
        if m is None:
            raise ParseError(f"ordering {text!r} needs an explicit variable order or m")
        return MonomialOrder.natural(kind, m)
    try:
        perm = tuple(int(v[1:]) - 1 for v in rest.split("<"))
        if any(not v.upper().startswith("X") for v in rest.split("<")):
            raise ValueError
    except ValueError as exc:
        raise ParseError(f"bad ordering {text!r}") from exc
    order = MonomialOrder(kind, perm)
    if m is not None and order.nvars != m:
        raise DimensionMismatch(f"ordering {text!r} is over {order.nvars} variables, need {m}")
    return order


def all_orders(m: int, kinds=("deglex", "lex")):
    return [MonomialOrder(k, perm) for k in kinds for perm in itertools.permutations(range(m))]


# -- text forms --------------------------------------------------------------------

def render_monomial(M: Monomial) -> str:
    parts = []
    for i, a in enumerate(M):
        if a == 1:
            parts.append(f"X{i + 1}")
        elif a > 1:
            parts.append(f"X{i + 1}^{a}")
    return "*".join(parts) or "1"


def parse_monomial(text, m: int) -> Monomial:
    """Accept ``"X1^3*X2"``, ``"1"`` or an exponent list ``[3, 1]``."""
    if isinstance(text, (list, tuple)):
        M = tuple(int(a) for a in text)
        if len(M) != m:
            raise DimensionMismatch(f"{list(text)} is not a monomial in {m} variables")
        if any(a < 0 for a in M):
            raise ParseError(f"negative exponent in {list(text)}")
        return M
    s = str(text).replace(" ", "")
    exps = [0] * m
    if s == "1":
        return tuple(exps)
    for factor in s.split("*"):
        mt = re.fullmatch(r"[Xx](\d+)(?:\^(\d+))?", factor)
        if not mt:
            raise ParseError(f"bad monomial {text!r}")
        i = int(mt.group(1)) - 1
        if not 0 <= i < m:
            raise DimensionMismatch(f"variable X{i + 1} outside X1..X{m}")
        exps[i] += int(mt.group(2) or 1)
    return tuple(exps)


# -- boxes -----------------------------------------------------------------------

@dataclass(frozen=True)
class BoxRegion:
    """Monomials with exponent j below ``caps[j]``."""

    caps: tuple

    def __post_init__(self):
        object.__setattr__(self, "caps", tuple(int(a) for a in self.caps))
        if any(a < 1 for a in self.caps):
            raise ValueError(f"box caps must be positive, got {self.caps}")

    @classmethod
    def square(cls, q: int, m: int) -> BoxRegion:
        return cls((q,) * m)

    @property
    def nvars(self) -> int:
        return len(self.caps)

    def __len__(self):
        return math.prod(self.caps)

    def __contains__(self, M):
        return len(M) == len(self.caps) and all(0 <= a < c for a, c in zip(M, self.caps))

    def __iter__(self):
        return itertools.product(*(range(c) for c in self.caps))

    @property
    def apex(self) -> Monomial:
        return tuple(c - 1 for c in self.caps)

    def check(self, *monos):
        for M in monos:
            if M not in self:
                raise MonomialOutsideBox(f"{render_monomial(M)} is not in box {self.caps}")

    @cached_property
    def size(self) -> int:
        return len(self)


# -- mu and sigma -------------------------------------------------------------------

def _prepare(monos):
    monos = list(dict.fromkeys(tuple(M) for M in monos))
    if not monos:
        raise EmptyInput("need at least one monomial")
    _check_dims(*monos)
    return monos


def _minimal(monos):
    """Drop inputs that divide another input; mu is unchanged."""
    return [M for M in monos if not any(M != N and all(a <= b for a, b in zip(M, N)) for N in monos)]


def _inclusion_exclusion(monos, term):
    total = 0
    for r in range(1, len(monos) + 1):
        sign = 1 if r % 2 else -1
        for sub in itertools.combinations(monos, r):
            total += sign * term(sub)
    return total


def mu(monos) -> int:
    """Number of monomials dividing at least one input."""
    monos = _minimal(_prepare(monos))
    if len(monos) > MAX_INCLUSION_EXCLUSION:
        return mu_enumerate(monos)
    return _inclusion_exclusion(monos, lambda sub: math.prod(a + 1 for a in gcd(*sub)))


def mu_enumerate(monos) -> int:
    """mu by scanning the bounding box of the inputs."""
    monos = _prepare(monos)
    caps = [a + 1 for a in lcm(*monos)]
    return sum(
        1
        for M in itertools.product(*(range(c) for c in caps))
        if any(all(a <= b for a, b in zip(M, N)) for N in monos)
    )


def sigma(box: BoxRegion, monos) -> int:
    """Number of box monomials divisible by at least one input."""
    monos = _prepare(monos)
    box.check(*monos)
    # keep the divisibility-minimal inputs; their multiples cover the rest
    monos = [M for M in monos if not any(M != N and all(a <= b for a, b in zip(N, M)) for N in monos)]
    if len(monos) > MAX_INCLUSION_EXCLUSION:
        return sigma_enumerate(box, monos)
    return _inclusion_exclusion(
        monos, lambda sub: math.prod(c - a for a, c in zip(lcm(*sub), box.caps))
    )


def sigma_enumerate(box: BoxRegion, monos) -> int:
    """sigma by scanning every box monomial."""
    monos = _prepare(monos)
    box.check(*monos)
    return sum(1 for M in box if any(all(a <= b for a, b in zip(N, M)) for N in monos))


def complement(box: BoxRegion, M: Monomial) -> Monomial:
    """apex / M: exponent j becomes ``caps[j] - 1 - M[j]``."""
    box.check(M)
    return tuple(c - 1 - a for a, c in zip(M, box.caps))


def rm_dimension(box: BoxRegion, d: int) -> int:
    """Box monomials of total degree at most d."""
    if d < 0:
        return 0
    counts = [1]
    for c in box.caps:
        nxt = [0] * (len(counts) + c - 1)
        for i, x in enumerate(counts):
            for a in range(c):
                nxt[i + a] += x
        counts = nxt
    return sum(counts[: d + 1])


# -- successor chains -----------------------------------------------------------------

def _compositions(total: int, m: int):
    if m == 1:
        yield (total,)
        return
    for a in range(total + 1):
        for rest in _compositions(total - a, m - 1):
            yield (a,) + rest


def successor(order: MonomialOrder, M: Monomial, box: BoxRegion | None = None):
    """The next monomial after M, among box members when a box is given.

    Returns None when M is the largest box member.
    """
    if box is not None:
        box.check(M)
        key = order.key(M)
        above = [N for N in box if order.key(N) > key]
        return min(above, key=order.key) if above else None
    if order.kind == "lex":
        # multiplying by the least significant variable is the immediate successor
        v = order.perm[0]
        return tuple(a + 1 if i == v else a for i, a in enumerate(M))
    key = order.key(M)
    d = sum(M)
    level = [N for N in _compositions(d, len(M)) if order.key(N) > key]
    if level:
        return min(level, key=order.key)
    return min(_compositions(d + 1, len(M)), key=order.key)


def consecutive_chain(order: MonomialOrder, box: BoxRegion | None, start: Monomial, t: int):
    """``t`` consecutive monomials beginning at ``start``."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if len(start) != order.nvars:
        raise DimensionMismatch(f"{start} does not match {order}")
    if box is None:
        chain = [tuple(start)]
        while len(chain) < t:
            chain.append(successor(order, chain[-1]))
        return chain
    box.check(start)
    members = order.sorted(box)
    i = members.index(tuple(start))
    if i + t > len(members):
        raise ChainLeavesBox(f"only {len(members) - i} box monomials from {render_monomial(start)} on")
    return members[i : i + t]


def is_consecutive(order: MonomialOrder, chain, box: BoxRegion | None = None) -> bool:
    """True when every link of ``chain`` is the successor of the previous one."""
    chain = [tuple(M) for M in chain]
    if not chain:
        return False
    if box is not None:
        if any(M not in box for M in chain):
            return False
        members = order.sorted(box)
        i = members.index(chain[0])
        return members[i : i + len(chain)] == chain
    return all(successor(order, a) == b for a, b in zip(chain, chain[1:]))
