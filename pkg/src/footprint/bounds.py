"""Root-count bounds over Cartesian grids: footprint, generalized Alon-Furedi,
and the classical Alon-Furedi special case."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    DegreeOutOfRange,
    DuplicateLeadingMonomial,
    InfeasibleDegrees,
    InvariantViolation,
    MonomialOutsideBox,
)
from .monomial import BoxRegion, MonomialOrder, all_orders, render_monomial, sigma
from .poly import CartesianGrid, Polynomial, root_count


@dataclass
class BoundReport:
    """A bound with the monomials that certify it.

    ``sense`` is ``"max_roots"`` (``value`` bounds common roots from above) or
    ``"min_nonroots"`` (``value`` bounds non-roots from below).  ``n`` is the
    grid size, so either reading can be converted into the other.
    """

    value: int
    certificate: list
    n: int
    sense: str = "max_roots"
    oracle: int | None = None
    verdict: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def max_roots(self) -> int:
        return self.value if self.sense == "max_roots" else self.n - self.value

    @property
    def min_nonroots(self) -> int:
        return self.n - self.max_roots

    def check(self, roots: int) -> BoundReport:
        """Attach an exhaustive root count and classify it against the bound."""
        self.oracle = roots
        if roots > self.max_roots:
            self.verdict = "violation"
        elif roots == self.max_roots:
            self.verdict = "bound_tight"
        else:
            self.verdict = "bound_holds"
        return self

    def to_json(self):
        out = {
            "value": self.value,
            "sense": self.sense,
            "max_roots": self.max_roots,
            "certificate": [list(M) for M in self.certificate],
            "certificate_text": [render_monomial(M) for M in self.certificate],
        }
        if self.oracle is not None:
            out["oracle_roots"] = self.oracle
            out["verdict"] = self.verdict
        out.update(self.extra)
        return out


def footprint_bound(grid: CartesianGrid | BoxRegion, lms) -> BoundReport:
    """At most ``n - sigma(lms)`` common grid roots for polynomials with these
    leading monomials and support in the grid box."""
    box = grid.box if isinstance(grid, CartesianGrid) else grid
    lms = [tuple(M) for M in lms]
    if len(set(lms)) != len(lms):
        raise DuplicateLeadingMonomial("leading monomials must be pairwise distinct")
    s = sigma(box, lms)
    n = len(box)
    return BoundReport(n - s, lms, n, extra={"sigma": s})


def gen_alon_furedi(sizes, partial_degrees, total_degree: int) -> BoundReport:
    """Minimum sigma over monomials of degree ``total_degree`` with exponent j
    at most ``partial_degrees[j]``; a lower bound on non-roots."""
    sizes = tuple(sizes)
    d = tuple(partial_degrees)
    if len(d) != len(sizes):
        raise InfeasibleDegrees("need one partial degree per variable")
    if any(not 0 <= di < a for di, a in zip(d, sizes)):
        raise InfeasibleDegrees(f"partial degrees {d} must lie below the grid sizes {sizes}")
    box = BoxRegion(sizes)
    candidates = [
        M for M in itertools.product(*(range(di + 1) for di in d)) if sum(M) == total_degree
    ]
    if not candidates:
        raise InfeasibleDegrees(f"no monomial of degree {total_degree} within partial degrees {d}")
    best = min(candidates, key=lambda M: (sigma(box, [M]), M))
    return BoundReport(
        sigma(box, [best]), [best], len(box), sense="min_nonroots",
        extra={"candidates": [list(M) for M in candidates]},
    )


def alon_furedi_special(a: int, m: int, d: int) -> int:
    """Closed-form minimum of sigma over degree-d monomials in the a^m box.

    Writing d = v(a-1) + l with 0 <= l < a-1 the value is (a-l) a^(m-v-1);
    the endpoint d = m(a-1) is the apex monomial with sigma 1.
    """
    if a < 2 or m < 1 or not 1 <= d <= m * (a - 1):
        raise DegreeOutOfRange(f"need 1 <= d <= m(a-1), got a={a}, m={m}, d={d}")
    v, ell = divmod(d, a - 1)
    if v == m:
        return 1
    return (a - ell) * a ** (m - v - 1)


def default_orders(m: int):
    kinds = ("deglex", "lex") if m <= 2 else ("deglex", "degrevlex", "lex")
    if m > 4:
        return [MonomialOrder.natural(k, m) for k in kinds]
    return all_orders(m, kinds)


def compare_orderings(F: Polynomial, grid: CartesianGrid, orders=None) -> dict:
    """Footprint bound of F under several orderings beside the generalized
    Alon-Furedi bound, each checked against the exhaustive root count."""
    if F.is_zero():
        raise ValueError("compare_orderings needs a nonzero polynomial")
    box = grid.box
    for M in F.terms:
        if M not in box:
            raise MonomialOutsideBox(f"{render_monomial(M)} lies outside the grid box; reduce first")
    orders = orders or default_orders(F.nvars)
    roots = root_count(F, grid).roots
    rows = []
    for order in orders:
        lm = F.leading_monomial(order)
        rep = footprint_bound(grid, [lm]).check(roots)
        rows.append({"order": str(order), "lm": list(lm), "lm_text": render_monomial(lm), "report": rep})
    gaf = gen_alon_furedi(grid.sizes, F.partial_degrees(), F.degree()).check(roots)
    reports = [r["report"] for r in rows] + [gaf]
    if any(r.verdict == "violation" for r in reports):
        raise InvariantViolation("a bound was exceeded by the exhaustive root count")
    return {
        "oracle_roots": roots,
        "n": grid.n,
        "footprint": rows,
        "gen_alon_furedi": gaf,
        "best_footprint": min(r["report"].max_roots for r in rows),
    }
