"""Command-line front end: JSON problem files in, JSON reports out.

Exit codes: 0 success, 1 usage or input error, 2 computation error,
3 internal invariant violation.  Index sets (coordinate positions) are 1-based.
Randomized steps use ``random.Random(seed)`` (Mersenne Twister); the seed is
echoed in every output header.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import re
import sys
from importlib import resources

import jsonschema

from . import __version__
from .bounds import alon_furedi_special, compare_orderings, footprint_bound, gen_alon_furedi
from .codes import (
    DEFAULT_BUDGET,
    LinearCode,
    chain_codes,
    dual_code,
    eval_code,
    forney_check,
    monomial_dual,
    rghw_cartesian,
    rghw_profile,
)
from .errors import (
    FootprintError,
    GuaranteeUnmetAndConstructionFailed,
    InvariantViolation,
    ParseError,
)
from .fengrao import OrderedBasisPair, fr_profile, rghw_lower_bounds, weight_bounds
from .field import parse_element, parse_field, render_element, render_field
from .interp import InterpolationProblem, capacity, guarantee_check, interpolate, sharpness_witness
from .monomial import (
    BoxRegion,
    MonomialOrder,
    mu,
    mu_enumerate,
    parse_monomial,
    parse_order,
    render_monomial,
    sigma,
    sigma_enumerate,
)
from .poly import CartesianGrid, PointSet, Polynomial, parse_polynomial, root_count, witness_H

SCHEMA_VERSION = "1"
FIELD_ENV = "FOOTPRINT_FIELD"

COMMANDS = (
    "mu", "sigma", "footprint-bound", "alon-furedi", "compare", "interpolate",
    "capacity", "rghw", "feng-rao", "forney", "dual", "verify",
)


class UsageError(Exception):
    code = "usage_error"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_schema(name: str) -> dict:
    text = resources.files("footprint.schemas").joinpath(f"{name}.json").read_text()
    return json.loads(text)


def validate_input(command: str, data) -> None:
    try:
        jsonschema.validate(data, load_schema(f"{command}.input"))
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"{path or '<root>'}: {exc.message}") from None


class SchemaError(Exception):
    code = "schema_error"


# -- input helpers ----------------------------------------------------------------

class Context:
    """Resolved field, variable count and ordering for one command."""

    def __init__(self, args, data):
        self.args = args
        self.data = data
        text = args.field or data.get("field") or os.environ.get(FIELD_ENV)
        if text is None:
            raise UsageError(f"no field given (use --field, a 'field' entry or ${FIELD_ENV})")
        self.field = parse_field(text)
        self.order_text = args.order or data.get("order")
        self.m = data.get("nvars") or self._infer_nvars()

    def _infer_nvars(self):
        if self.order_text and ":" in self.order_text:
            return len(self.order_text.split(":", 1)[1].split("<"))
        d = self.data
        for key in ("monomials", "chain", "lms", "W"):
            for M in d.get(key) or ():
                if isinstance(M, list):
                    return len(M)
        for P in d.get("points") or ():
            return len(P)
        if d.get("grid"):
            return len(d["grid"])
        texts = list(d.get("polynomials") or ())
        if d.get("polynomial") is not None:
            texts.append(d["polynomial"])
        idx = []
        for t in texts:
            if isinstance(t, str):
                idx += [int(i) for i in re.findall(r"[Xx](\d+)", t)]
            else:
                idx += [len(term["exp"]) for term in t["terms"]]
        for key in ("monomials", "chain", "lms", "W"):
            for M in d.get(key) or ():
                idx += [int(i) for i in re.findall(r"[Xx](\d+)", str(M))]
        if idx:
            return max(idx)
        rows = d.get("code") or d.get("C1") or d.get("basis")
        if isinstance(rows, dict):
            rows = [[0] * rows["n"]]
        if rows and self.field.is_finite:
            n, q, m = len(rows[0]), self.field.q, 0
            while q**m < n:
                m += 1
            if q**m == n:
                return m
        return None

    @property
    def nvars(self) -> int:
        if self.m is None:
            raise UsageError("cannot infer the number of variables; give 'nvars'")
        return self.m

    @property
    def order(self) -> MonomialOrder:
        return parse_order(self.order_text or "deglex", self.nvars)

    def monomials(self, key):
        return [parse_monomial(M, self.nvars) for M in self.data[key]]

    def points(self, key="points"):
        F = self.field
        return PointSet(F, [[parse_element(F, v) for v in P] for P in self.data.get(key, [])], nvars=self.nvars)

    def grid(self, required=True):
        F = self.field
        if self.data.get("grid"):
            coords = tuple(tuple(parse_element(F, v) for v in A) for A in self.data["grid"])
            g = CartesianGrid(F, coords)
            if g.nvars != self.nvars:
                raise UsageError(f"grid has {g.nvars} coordinate sets, need {self.nvars}")
            return g
        if F.is_finite:
            return CartesianGrid.full(F, self.nvars)
        if required:
            raise UsageError("a grid is required over the rationals")
        return None

    def polynomial(self, obj):
        if isinstance(obj, str):
            return parse_polynomial(self.field, self.nvars, obj)
        return Polynomial.from_json(self.field, self.nvars, obj)

    def matrix(self, rows):
        F = self.field
        return [[parse_element(F, v) for v in row] for row in rows]


def _elem(F, v):
    return render_element(F, v)


def _point(F, P):
    return [_elem(F, v) for v in P]


def _poly_json(f: Polynomial, order: MonomialOrder):
    lm = f.leading_monomial(order)
    return {"text": f.render(order), "lm": list(lm), "lm_text": render_monomial(lm), **f.to_json()}


def _labelled_subsets(monos, fn):
    out = {}
    n = len(monos)
    for size in range(1, n + 1):
        for sub in itertools.combinations(range(n), size):
            label = "all" if size == n and n > 1 else ",".join(f"M{i + 1}" for i in sub)
            out[label] = fn([monos[i] for i in sub])
    return out


def _code(ctx, rows, n=None):
    if isinstance(rows, dict):
        if rows.get("field") and parse_field(rows["field"]) != ctx.field:
            raise UsageError(f"code over {rows['field']} but the problem is over {render_field(ctx.field)}")
        if n is not None and rows["n"] != n:
            raise UsageError(f"code of length {rows['n']}, expected {n}")
        n, rows = rows["n"], rows["rows"]
    M = ctx.matrix(rows)
    if n is None:
        if not M:
            raise UsageError("cannot infer the code length from an empty generator matrix")
        n = len(M[0])
    return LinearCode(ctx.field, n, M)


# -- commands ----------------------------------------------------------------------

def cmd_mu(ctx):
    monos = ctx.monomials("monomials")
    values = _labelled_subsets(monos, mu)
    oracle = _labelled_subsets(monos, mu_enumerate)
    if values != oracle:
        raise InvariantViolation("inclusion-exclusion and enumeration disagree")
    return {"monomials": [render_monomial(M) for M in monos], "mu": values}


def cmd_sigma(ctx):
    monos = ctx.monomials("monomials")
    if ctx.data.get("box"):
        box = BoxRegion(tuple(ctx.data["box"]))
    else:
        box = ctx.grid().box
    values = _labelled_subsets(monos, lambda sub: sigma(box, sub))
    oracle = _labelled_subsets(monos, lambda sub: sigma_enumerate(box, sub))
    if values != oracle:
        raise InvariantViolation("inclusion-exclusion and enumeration disagree")
    return {"box": list(box.caps), "monomials": [render_monomial(M) for M in monos], "sigma": values}


def cmd_footprint_bound(ctx):
    grid = ctx.grid()
    order = ctx.order
    polys = [ctx.polynomial(f) for f in ctx.data.get("polynomials") or ()]
    if polys:
        lms = [f.leading_monomial(order) for f in polys]
    else:
        lms = ctx.monomials("lms")
    rep = footprint_bound(grid, lms)
    if polys:
        rep.check(root_count(polys, grid).roots)
        if rep.verdict == "violation":
            raise InvariantViolation("common roots exceed the footprint bound")
    out = {"order": str(order), "n": grid.n, **rep.to_json()}
    if not polys:
        witnesses = [witness_H(grid, M) for M in lms]
        out["witness_roots"] = root_count(witnesses, grid).roots
    return out


def cmd_alon_furedi(ctx):
    d = ctx.data
    out = {}
    if d.get("polynomial") is not None:
        grid = ctx.grid()
        f = ctx.polynomial(d["polynomial"])
        rep = gen_alon_furedi(grid.sizes, f.partial_degrees(), f.degree())
        rep.check(root_count(f, grid).roots)
        if rep.verdict == "violation":
            raise InvariantViolation("roots exceed the generalized Alon-Furedi bound")
        out["generalized"] = rep.to_json()
    elif "sizes" in d:
        out["generalized"] = gen_alon_furedi(d["sizes"], d["partial_degrees"], d["total_degree"]).to_json()
    if "a" in d:
        out["special"] = {"a": d["a"], "m": d["m"], "d": d["d"],
                          "min_nonroots": alon_furedi_special(d["a"], d["m"], d["d"])}
    if not out:
        raise UsageError("give a polynomial, sizes/partial_degrees/total_degree or a/m/d")
    return out


def cmd_compare(ctx):
    grid = ctx.grid()
    f = ctx.polynomial(ctx.data["polynomial"])
    orders = [parse_order(t, ctx.nvars) for t in ctx.data["orders"]] if ctx.data.get("orders") else None
    res = compare_orderings(f, grid, orders)
    return {
        "polynomial": f.render(),
        "n": res["n"],
        "oracle_roots": res["oracle_roots"],
        "footprint": [
            {"order": r["order"], "lm": r["lm"], "lm_text": r["lm_text"], **r["report"].to_json()}
            for r in res["footprint"]
        ],
        "gen_alon_furedi": res["gen_alon_furedi"].to_json(),
        "best_footprint": res["best_footprint"],
    }


def _problem(ctx, with_k=True):
    k = ctx.data.get("k") if with_k else None
    return InterpolationProblem(ctx.field, ctx.order, ctx.monomials("chain"), ctx.points(), k)


def cmd_interpolate(ctx):
    problem = _problem(ctx)
    threshold, satisfied = guarantee_check(problem)
    polys = interpolate(problem)
    out = {
        "order": str(problem.order),
        "k": problem.k,
        "t": problem.t,
        "size_A": len(problem.points),
        "threshold": threshold,
        "guarantee": satisfied,
        "polynomials": [_poly_json(f, problem.order) for f in polys],
        "verified": True,
    }
    if not ctx.field.is_finite:
        out["grid"] = [[_elem(ctx.field, v) for v in A] for A in problem.grid().coords]
    return out


def cmd_capacity(ctx):
    F = ctx.field
    out = {"order": None}
    if "points" in ctx.data:
        problem = _problem(ctx, with_k=False)
        out["order"] = str(problem.order)
        out["size_A"] = len(problem.points)
        out["capacity"] = capacity(problem)
    if "k" in ctx.data:
        order = ctx.order
        chain = ctx.monomials("chain")
        A = sharpness_witness(F, order, chain, ctx.data["k"], ctx.args.budget)
        witness_problem = InterpolationProblem(F, order, chain, A)
        threshold, _ = guarantee_check(witness_problem, ctx.data["k"])
        out["order"] = str(order)
        out["witness"] = {
            "k": ctx.data["k"],
            "points": [_point(F, P) for P in A],
            "size": len(A),
            "threshold": threshold,
            "capacity": capacity(witness_problem),
        }
    return out


def cmd_rghw(ctx):
    budget = ctx.args.budget
    if ctx.data.get("chain"):
        grid = ctx.grid()
        order = ctx.order
        chain = ctx.monomials("chain")
        InterpolationProblem(ctx.field, order, chain, PointSet(ctx.field, (), nvars=ctx.nvars))
        C1, C2 = chain_codes(grid, order, chain)
        ks = [ctx.data["k"]] if ctx.data.get("k") else range(1, len(chain) + 1)
        prof = rghw_profile(C1, C2, budget)
        rows = []
        for k in ks:
            size, support = prof[k - 1]
            cart = rghw_cartesian(grid, chain, k)
            if cart != size:
                raise InvariantViolation(f"M_{k}: closed form {cart} vs exhaustive {size}")
            rows.append({"k": k, "cartesian": cart, "bruteforce": size, "support": [i + 1 for i in support]})
        return {"order": str(order), "n": grid.n, "dim_C1": C1.dim, "dim_C2": C2.dim, "weights": rows}
    C1 = _code(ctx, ctx.data["C1"])
    C2 = _code(ctx, ctx.data.get("C2") or [], C1.n)
    prof = rghw_profile(C1, C2, budget)
    ks = [ctx.data["k"]] if ctx.data.get("k") else range(1, len(prof) + 1)
    rows = []
    for k in ks:
        if not 1 <= k <= len(prof):
            raise UsageError(f"k={k} outside 1..{len(prof)}")
        size, support = prof[k - 1]
        rows.append({"k": k, "bruteforce": size, "support": [i + 1 for i in support]})
    return {"n": C1.n, "dim_C1": C1.dim, "dim_C2": C2.dim, "weights": rows}


def cmd_feng_rao(ctx):
    d = ctx.data
    if d.get("basis"):
        pair = OrderedBasisPair(ctx.field, ctx.matrix(d["basis"]))
        out = {}
    else:
        grid = ctx.grid()
        pair = OrderedBasisPair.from_grid(grid, ctx.order)
        out = {"order": str(ctx.order), "monomials": [render_monomial(M) for M in pair.monomials]}
    prof = fr_profile(pair)
    out["n"] = pair.n
    out["V"] = {str(i): sorted(prof.V[i]) for i in range(1, pair.n + 1)}
    out["Lambda"] = {str(i): sorted(prof.Lam[i]) for i in range(1, pair.n + 1)}
    if d.get("code"):
        D = _code(ctx, d["code"], pair.n)
        sb, mb = weight_bounds(pair, D, prof)
        support = int((D.basis != 0).any(axis=0).sum())
        if max(sb, mb) > support:
            raise InvariantViolation("a Feng-Rao bound exceeds the support size")
        out["code"] = {"dim": D.dim, "support": support, "sigma_bar": sb, "mu_bar": mb}
    if d.get("k1"):
        k2, k1 = d.get("k2", 0), d["k1"]
        ks = [d["k"]] if d.get("k") else range(1, k1 - k2 + 1)
        out["rghw_lower_bounds"] = []
        for k in ks:
            sb, mb = rghw_lower_bounds(prof, k2, k1, k)
            out["rghw_lower_bounds"].append({"k": k, "sigma_bar": sb, "mu_bar": mb})
    return out


def cmd_forney(ctx):
    C = _code(ctx, ctx.data["code"], ctx.data.get("length"))
    A = [i - 1 for i in ctx.data["A"]]
    return {"n": C.n, "A": sorted(ctx.data["A"]), **forney_check(C, A)}


def cmd_dual(ctx):
    grid = ctx.grid()
    W = ctx.monomials("W")
    Wd = monomial_dual(grid.box, W)
    lhs = dual_code(eval_code(grid, W))
    rhs = eval_code(grid, Wd)
    if lhs != rhs:
        raise InvariantViolation("dual of E(W) differs from E of the monomial dual")
    return {
        "n": grid.n,
        "W": [render_monomial(M) for M in W],
        "dual_monomials": [render_monomial(M) for M in Wd],
        "dim_dual": lhs.dim,
        "equal": True,
    }


def cmd_verify(ctx):
    from .verify import verify_report

    return verify_report(ctx.args.seed)


HANDLERS = {
    "mu": cmd_mu,
    "sigma": cmd_sigma,
    "footprint-bound": cmd_footprint_bound,
    "alon-furedi": cmd_alon_furedi,
    "compare": cmd_compare,
    "interpolate": cmd_interpolate,
    "capacity": cmd_capacity,
    "rghw": cmd_rghw,
    "feng-rao": cmd_feng_rao,
    "forney": cmd_forney,
    "dual": cmd_dual,
    "verify": cmd_verify,
}


# -- plumbing ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="footprint", description="Root-count bounds and interpolation over grids.")
    p.add_argument("--version", action="version", version=f"footprint {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--field", help=f"field spec such as gf(8) or rational (default ${FIELD_ENV})")
    p.add_argument("--order", help="monomial ordering such as deglex or lex:X1<X2")
    p.add_argument("--input", help="problem file, or - for standard input")
    p.add_argument("--output", default="-", help="report file, or - for standard output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="brute-force search budget")
    p.add_argument("--pretty", action="store_true", help="indent the JSON output")
    p.add_argument("--expr", action="append", help="polynomial text, may repeat")
    return p


def _merge_expr(command, exprs, data):
    if not exprs:
        return
    if command == "footprint-bound":
        data["polynomials"] = list(data.get("polynomials") or ()) + list(exprs)
    elif command in ("compare", "alon-furedi"):
        if len(exprs) != 1 or "polynomial" in data:
            raise UsageError(f"{command} takes exactly one polynomial")
        data["polynomial"] = exprs[0]
    else:
        raise UsageError(f"--expr does not apply to {command}")


def _read_input(args):
    if args.input is None:
        return {"version": SCHEMA_VERSION}
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def _emit(args, payload):
    text = json.dumps(payload, indent=2 if args and args.pretty else None)
    if args is None or args.output == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _error(args, command, code, message, exit_code, **extra):
    print(f"footprint: error [{code}]: {message}", file=sys.stderr)
    seed = args.seed if args else 0
    err = {"code": code, "message": message, **extra}
    _emit(args, {"version": SCHEMA_VERSION, "command": command, "seed": seed, "error": err})
    return exit_code


def main(argv=None) -> int:
    args = None
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _error(None, None, UsageError.code, str(exc), 1)
    command = args.command
    try:
        data = _read_input(args)
        if command != "verify":
            if not isinstance(data, dict):
                raise SchemaError("the problem file must hold a JSON object")
            if args.input is None and not args.expr:
                raise UsageError(f"{command} needs --input (or --expr)")
            _merge_expr(command, args.expr, data)
            validate_input(command, data)
            ctx = Context(args, data)
        else:
            ctx = Context.__new__(Context)
            ctx.args = args
    except (UsageError, SchemaError) as exc:
        return _error(args, command, exc.code, str(exc), 1)
    except FootprintError as exc:
        return _error(args, command, exc.code, str(exc), 1)
    try:
        result = HANDLERS[command](ctx)
    except UsageError as exc:
        return _error(args, command, exc.code, str(exc), 1)
    except ParseError as exc:
        return _error(args, command, exc.code, str(exc), 1)
    except InvariantViolation as exc:
        return _error(args, command, exc.code, str(exc), 3)
    except GuaranteeUnmetAndConstructionFailed as exc:
        order = ctx.order
        return _error(
            args, command, exc.code, str(exc), 2,
            achieved=exc.achieved, polynomials=[_poly_json(f, order) for f in exc.polynomials],
        )
    except FootprintError as exc:
        return _error(args, command, exc.code, str(exc), 2)
    except Exception as exc:  # noqa: BLE001 - anything else is a bug
        return _error(args, command, "internal_error", f"{type(exc).__name__}: {exc}", 3)
    if ctx is not None and command != "verify":
        result = {"field": render_field(ctx.field), **result}
    _emit(args, {"version": SCHEMA_VERSION, "command": command, "seed": args.seed, "result": result})
    if command == "verify" and not result.get("all_pass", False):
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
