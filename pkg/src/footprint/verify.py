"""Recompute the worked examples over F_8 and the Hermitian polynomial.

Each entry records the published value, the computed value and an oracle
value, labelled PASS, FAIL or DISCREPANCY.  DISCREPANCY marks a published
value that differs from the computation while both counting methods agree.
"""

from __future__ import annotations

import random

from .bounds import compare_orderings, footprint_bound
from .field import GF
from .interp import InterpolationProblem, guarantee_check
from .monomial import BoxRegion, mu, mu_enumerate, parse_order, render_monomial, sigma, sigma_enumerate
from .poly import CartesianGrid, Polynomial, parse_polynomial, root_count

F8_CHAIN = [(3, 1), (2, 2), (1, 3)]
F8_ORDER = "deglex:X1<X2"

PUBLISHED_MU = {"M1": 8, "M2": 9, "M3": 8, "M1,M2": 11, "M1,M3": 12, "M2,M3": 11, "M1,M2,M3": 13}
PUBLISHED_SIGMA = {"M1": 35, "M2": 36, "M3": 35, "M1,M2": 42, "M1,M3": 45, "M2,M3": 42, "M1,M2,M3": 46}
PUBLISHED_THRESHOLDS = {3: 8, 2: 11, 1: 13}

# published values known to disagree with exhaustive counting
KNOWN_DISCREPANCIES = {"M1,M2", "M2,M3"}


def _subsets():
    return {label: [F8_CHAIN[int(s[1:]) - 1] for s in label.split(",")] for label in PUBLISHED_MU}


def _status(published, computed, oracle, label=None):
    if computed != oracle:
        return "FAIL"
    if computed == published:
        return "PASS"
    return "DISCREPANCY" if label in KNOWN_DISCREPANCIES else "FAIL"


def _mu_block():
    rows = []
    for label, monos in _subsets().items():
        c, o = mu(monos), mu_enumerate(monos)
        rows.append({"label": label, "published": PUBLISHED_MU[label], "computed": c,
                     "oracle": o, "status": _status(PUBLISHED_MU[label], c, o)})
    return rows


def _sigma_block():
    box = BoxRegion.square(8, 2)
    rows = []
    for label, monos in _subsets().items():
        c, o = sigma(box, monos), sigma_enumerate(box, monos)
        p = PUBLISHED_SIGMA[label]
        rows.append({"label": label, "published": p, "computed": c, "oracle": o,
                     "status": _status(p, c, o, label)})
    return rows


def _footprint_block():
    grid = CartesianGrid.full(GF(8), 2)
    rows = []
    for label, monos in _subsets().items():
        rep = footprint_bound(grid, monos)
        p = grid.n - PUBLISHED_SIGMA[label]
        o = grid.n - sigma_enumerate(grid.box, monos)
        rows.append({"label": label, "published": p, "computed": rep.max_roots, "oracle": o,
                     "status": _status(p, rep.max_roots, o, label)})
    return rows


def _threshold_block():
    F = GF(8)
    order = parse_order(F8_ORDER)
    problem = InterpolationProblem(F, order, F8_CHAIN, [])
    rows = []
    for k, p in PUBLISHED_THRESHOLDS.items():
        threshold, _ = guarantee_check(problem, k)
        rows.append({"k": k, "published": p, "computed": threshold, "max_size_A": threshold - 1,
                     "status": "PASS" if threshold == p else "FAIL"})
    return rows


def _hermitian_block():
    rows = []
    for q in (2, 3):
        F = GF(q * q)
        grid = CartesianGrid.full(F, 2)
        H = parse_polynomial(F, 2, f"X1^{q + 1} - X2^{q} - X2")
        lex = parse_order("lex:X1<X2")
        graded = parse_order("deglex:X1<X2")
        res = compare_orderings(H, grid, [lex, graded])
        lex_bound = res["footprint"][0]["report"].max_roots
        graded_bound = res["footprint"][1]["report"].max_roots
        gaf = res["gen_alon_furedi"].max_roots
        checks = {
            "roots": (q**3, res["oracle_roots"]),
            "lex_footprint": (q**3, lex_bound),
            "graded_footprint": (q**3 + q**2, graded_bound),
            "gen_alon_furedi": (q**3 + q**2, gaf),
        }
        for name, (expected, got) in checks.items():
            rows.append({"q": q, "quantity": name, "published": expected, "computed": got,
                         "status": "PASS" if expected == got else "FAIL"})
    return rows


def _fuzz_block(seed: int, trials: int = 25):
    """Random polynomial sets over GF(3)^2 against the footprint bound."""
    rng = random.Random(seed)
    F = GF(3)
    grid = CartesianGrid.full(F, 2)
    box = list(grid.box)
    order = parse_order("deglex:X1<X2")
    violations = 0
    tight = 0
    for _ in range(trials):
        polys = []
        lms = set()
        for _ in range(rng.randint(1, 3)):
            terms = {M: rng.randrange(F.q) for M in rng.sample(box, rng.randint(1, len(box)))}
            f = Polynomial(F, 2, terms)
            if f.is_zero() or f.leading_monomial(order) in lms:
                continue
            lms.add(f.leading_monomial(order))
            polys.append(f)
        if not polys:
            continue
        rep = footprint_bound(grid, sorted(lms)).check(root_count(polys, grid).roots)
        violations += rep.verdict == "violation"
        tight += rep.verdict == "bound_tight"
    return {"seed": seed, "trials": trials, "violations": violations, "tight": tight,
            "status": "PASS" if violations == 0 else "FAIL"}


def verify_report(seed: int = 0) -> dict:
    report = {
        "chain": [render_monomial(M) for M in F8_CHAIN],
        "order": F8_ORDER,
        "mu": _mu_block(),
        "sigma": _sigma_block(),
        "footprint_bound": _footprint_block(),
        "thresholds": _threshold_block(),
        "hermitian": _hermitian_block(),
        "fuzz": _fuzz_block(seed),
    }
    statuses = [r["status"] for key in ("mu", "sigma", "footprint_bound", "thresholds", "hermitian")
                for r in report[key]] + [report["fuzz"]["status"]]
    report["summary"] = {s: statuses.count(s) for s in ("PASS", "DISCREPANCY", "FAIL")}
    report["all_pass"] = report["summary"]["FAIL"] == 0
    return report
