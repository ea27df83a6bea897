"""Command line front end: JSON problem files in, JSON or text reports out.

Exit codes: 0 success, 1 input error, 2 resource cap or inconclusive verdict,
3 internal consistency failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .algebra_core import Limits, format_polynomial
from .detector import (
    cr_upper_bound, detect_flat_dimension, flatdim_oracle, loewy_bounds_koszul,
    remark_example, verify_tor_decomposition, verify_window_collapse,
)
from .errors import ConsistencyError, FrobFlatError, InputError, LimitError, PreconditionError
from .frobenius import kunz_probe, tor_frobenius
from .groebner import Matrix, vec_components
from .homological import (
    Complex, ModulePresentation, assert_minimal, homology, koszul_complex, minimal_free_resolution,
)
from .invariants import find_sop, hilbert, ring_invariants
from .rings import QuotientRing

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_CONSISTENCY = 0, 1, 2, 3

ENV_LIMITS = {
    "max_degree": "FROBFLAT_MAX_DEGREE",
    "max_basis": "FROBFLAT_MAX_BASIS",
    "sop_attempts": "FROBFLAT_SOP_ATTEMPTS",
    "truncation_search": "FROBFLAT_TRUNCATION_SEARCH",
}


# ---------------------------------------------------------------------------
# problem files
# ---------------------------------------------------------------------------

class Problem:
    """A parsed problem file: ring plus an optional module or complex."""

    def __init__(self, ring, module=None, complex=None, options=None):
        self.ring = ring
        self.module = module
        self.complex = complex
        self.options = options or {}

    @property
    def target(self):
        """The module or complex to operate on (the ring itself if neither is given)."""
        if self.module is not None:
            return self.module
        if self.complex is not None:
            return self.complex
        return ModulePresentation.free(self.ring, [0])


def _field(doc, key, kind, where, default=None, required=False):
    if key not in doc:
        if required:
            raise InputError(f"{where}: missing field {key!r}")
        return default
    value = doc[key]
    if kind is not None and not isinstance(value, kind) or isinstance(value, bool):
        raise InputError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return value


def _poly(R, text, where):
    try:
        return R.S.parse(text)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def _matrix_rows(R, rows, nrows, where):
    if not isinstance(rows, list) or len(rows) != nrows:
        raise InputError(f"{where}: expected {nrows} rows")
    ncols = None
    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise InputError(f"{where}[{i}]: expected a list of polynomials")
        if ncols is None:
            ncols = len(row)
        elif len(row) != ncols:
            raise InputError(f"{where}[{i}]: ragged matrix")
        parsed.append([R.reduce(_poly(R, f, f"{where}[{i}][{j}]")) for j, f in enumerate(row)])
    return Matrix.from_rows(R.S, parsed, ncols or 0)


def limits_from(options=None, overrides=None, environ=None) -> Limits:
    """Limits from defaults, then environment variables, then file options, then flags."""
    environ = os.environ if environ is None else environ
    kw = {}
    for name, var in ENV_LIMITS.items():
        if var in environ:
            try:
                kw[name] = int(environ[var])
            except ValueError:
                raise InputError(f"environment variable {var} must be an integer") from None
    for source in (options or {}, overrides or {}):
        for name in ENV_LIMITS:
            if source.get(name) is not None:
                kw[name] = int(source[name])
    return Limits(**kw)


def parse_problem(doc, overrides=None, environ=None) -> Problem:
    if not isinstance(doc, dict):
        raise InputError("problem: expected a JSON object")
    p = _field(doc, "char", int, "problem", required=True)
    names = _field(doc, "vars", list, "problem", required=True)
    options = _field(doc, "options", dict, "problem", default={})
    limits = limits_from(options, overrides, environ)
    S_ring = QuotientRing(p, names, (), limits=limits)
    ideal = [_poly(S_ring, f, f"ideal[{i}]")
             for i, f in enumerate(_field(doc, "ideal", list, "problem", default=[]))]
    R = QuotientRing(p, names, ideal, limits=limits)
    module = complex_ = None
    if "module" in doc and "complex" in doc:
        raise InputError("problem: give either 'module' or 'complex', not both")
    if "module" in doc:
        m = _field(doc, "module", dict, "problem")
        rank = _field(m, "rank", int, "module", required=True)
        shifts = _field(m, "shifts", list, "module", default=[0] * rank)
        if len(shifts) != rank:
            raise InputError("module.shifts: expected one shift per generator")
        rels = _field(m, "relations", list, "module", default=[[] for _ in range(rank)])
        module = ModulePresentation(R, shifts, _matrix_rows(R, rels, rank, "module.relations"))
    if "complex" in doc:
        c = _field(doc, "complex", dict, "problem")
        ranks = _field(c, "ranks", list, "complex", required=True)
        if "range" in c:
            rng = _field(c, "range", list, "complex")
            lo = rng[0]
            if len(rng) != 2 or rng[1] - rng[0] + 1 != len(ranks):
                raise InputError("complex.range: expected [lo, hi] matching the ranks")
        else:
            lo = _field(c, "lo", int, "complex", default=0)
        shifts = _field(c, "shifts", list, "complex", default=[[0] * r for r in ranks])
        if len(shifts) != len(ranks) or any(len(s) != r for s, r in zip(shifts, ranks)):
            raise InputError("complex.shifts: expected one shift list per term")
        raw = _field(c, "differentials", dict, "complex", default={})
        diffs = {}
        for key, rows in raw.items():
            try:
                i = int(key)
            except ValueError:
                raise InputError(f"complex.differentials: key {key!r} is not an integer") from None
            if not (lo < i <= lo + len(ranks) - 1):
                raise InputError(f"complex.differentials[{key}]: out of range")
            M = _matrix_rows(R, rows, ranks[i - 1 - lo], f"complex.differentials[{key}]")
            if M.ncols != ranks[i - lo]:
                raise InputError(f"complex.differentials[{key}]: expected {ranks[i - lo]} columns")
            diffs[i] = M
        try:
            complex_ = Complex.free(R, lo, shifts, diffs)
        except ConsistencyError as exc:
            raise InputError(f"complex: {exc}") from None
    return Problem(R, module, complex_, options)


def load_problem(path, overrides=None) -> Problem:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_problem(doc, overrides)


# ---------------------------------------------------------------------------
# report building
# ---------------------------------------------------------------------------

def poly_str(R, d):
    return format_polynomial(d, R.S)


def presentation_json(M: ModulePresentation):
    R = M.ring
    return {
        "rank": M.rank,
        "shifts": list(M.shifts),
        "relations": [[poly_str(R, vec_components(col).get(i, {})) for col in M.relations.cols]
                      for i in range(M.rank)],
    }


def betti_json(betti):
    return {"betti": betti.as_list(), "graded": betti.rows()}


def ring_block(R: QuotientRing, full=False):
    h = hilbert(R)
    lo, coeffs = h.coefficients()
    out = {
        "ring": str(R),
        "char": R.p,
        "vars": list(R.variables),
        "ideal": [poly_str(R, g) for g in R.ideal_dicts()],
        "groebner_basis_size": len(R.gb.elements),
        "hilbert_numerator": {"lowest_degree": lo, "coefficients": coeffs},
        "dim": h.dim,
        "multiplicity": h.multiplicity,
    }
    if full:
        out.update(ring_invariants(R))
    return out


def cell_json(cell, R, with_presentation=True):
    out = {"i": cell.i, "e": cell.e, "available": cell.available}
    if not cell.available:
        out["reason"] = cell.reason
        return out
    out["zero"] = cell.is_zero
    out["finite_length"] = cell.finite_length
    out["k_dimension"] = cell.k_dimension
    if with_presentation and not cell.is_zero and cell.presentation is not None:
        out["presentation"] = presentation_json(cell.presentation)
        out["representatives"] = [_vec_list(R, v) for v in cell.representatives]
    return out


def _vec_list(R, v):
    comps = vec_components(v)
    size = max(comps) + 1 if comps else 0
    return [poly_str(R, comps.get(j, {})) for j in range(size)]


def verdict_json(v, R):
    out = {"outcome": v.outcome, "route": v.route}
    if v.bound is not None:
        out["bound"] = v.bound
    if v.witness is not None:
        out["witness"] = cell_json(v.witness, R)
    if v.reason:
        out["reason"] = v.reason
    if v.certificate:
        out["certificate"] = v.certificate
    if v.betti is not None:
        out["betti"] = v.betti
    if v.evidence is not None:
        out["evidence"] = [cell_json(c, R, with_presentation=False) for c in v.evidence.sorted_cells()]
    return out


def homology_json(H, R):
    out = {"degree": H.degree, "zero": H.is_zero, "finite_length": H.finite_length,
           "k_dimension": H.k_dimension}
    if not H.is_zero:
        out["presentation"] = presentation_json(H.presentation)
        out["representatives"] = [_vec_list(R, v) for v in H.representatives]
    return out


def _sequence(R, args_y, problem, key="y"):
    y = args_y if args_y is not None else problem.options.get(key)
    if y is None:
        return None
    if isinstance(y, str):
        y = [s for s in y.split(",") if s.strip()]
    return [R.reduce(_poly(R, f, f"{key}[{i}]")) for i, f in enumerate(y)]


def _opt(args, problem, name, default=None):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return problem.options.get(name, default) if problem is not None else default


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_ring_info(args, problem):
    R = problem.ring
    kp = kunz_probe(R)
    result = ring_block(R, full=True)
    result["kunz"] = {"regular": kp.regular,
                      "witness": cell_json(kp.witness, R) if kp.witness else None}
    return result, EXIT_OK


def cmd_resolve(args, problem):
    M = problem.module or ModulePresentation.free(problem.ring, [0])
    length = _opt(args, problem, "length", problem.ring.n + 1)
    res = minimal_free_resolution(M, length)
    assert_minimal(res.complex)
    out = betti_json(res.betti)
    out["complete"] = res.complete
    out["length"] = length
    return out, EXIT_OK


def cmd_tor_frob(args, problem):
    R = problem.ring
    e = _opt(args, problem, "e", 1)
    lo = _opt(args, problem, "lo", 0)
    hi = _opt(args, problem, "hi", R.n + 1)
    prof = tor_frobenius(problem.target, e, lo, hi)
    cells = [cell_json(c, R) for c in prof.sorted_cells()]
    code = EXIT_OK if all(c["available"] for c in cells) else EXIT_LIMIT
    return {"e": e, "range": [lo, hi], "cells": cells}, code


def cmd_flatdim(args, problem):
    R = problem.ring
    method = args.method
    out = {}
    code = EXIT_OK
    if method in ("frobenius", "both"):
        es = args.e if args.e else problem.options.get("e")
        if isinstance(es, int):
            es = [es]
        v = detect_flat_dimension(problem.target, t=_opt(args, problem, "t"), e_list=es,
                                  window=_opt(args, problem, "window"),
                                  consult_oracle=args.consult_oracle)
        out["frobenius"] = verdict_json(v, R)
        if v.outcome == "inconclusive":
            code = EXIT_LIMIT
    if method in ("oracle", "both"):
        if problem.module is None and problem.complex is not None:
            raise InputError("the resolution oracle takes a module, not a complex")
        o = flatdim_oracle(problem.target)
        out["oracle"] = verdict_json(o, R)
        if o.outcome == "inconclusive":
            code = EXIT_LIMIT
    if method == "both" and code == EXIT_OK and out["frobenius"]["outcome"] != out["oracle"]["outcome"]:
        raise ConsistencyError("Frobenius verdict and resolution oracle disagree")
    out["flat_dimension"] = out.get("frobenius") or out.get("oracle")
    return out, code


def cmd_koszul(args, problem):
    R = problem.ring
    y = _sequence(R, args.y, problem)
    if y is None:
        y = list(find_sop(R, _opt(args, problem, "seed", 0)).elements)
    M = problem.module or ModulePresentation.free(R, [0])
    K = koszul_complex(y, M)
    return {"y": [str(f) for f in y],
            "homology": [homology_json(homology(K, i), R) for i in range(K.lo, K.hi + 1)]}, EXIT_OK


def cmd_loewy_bounds(args, problem):
    R = problem.ring
    y = _sequence(R, args.y, problem)
    if y is None:
        y = list(find_sop(R, _opt(args, problem, "seed", 0)).elements)
    b = loewy_bounds_koszul(R, y)
    out = {"y": [str(f) for f in y], "lower": b.lower, "upper": b.upper, "exact": b.exact,
           "justification": b.justification, "truncation_index": b.truncation_index}
    if b.reason:
        out["reason"] = b.reason
    return out, EXIT_OK if b.upper is not None else EXIT_LIMIT


def cmd_cr_bound(args, problem):
    R = problem.ring
    c = cr_upper_bound(R, trials=_opt(args, problem, "trials", 4), seed=_opt(args, problem, "seed", 0))
    return {"value": c.value, "route": c.route, "witness": [str(f) for f in c.witness.elements],
            "candidates": c.candidates, "multiplicity": hilbert(R).multiplicity}, EXIT_OK


def cmd_verify(args, problem):
    R = problem.ring
    M = problem.module or ModulePresentation.free(R, [0])
    e = _opt(args, problem, "e", 1)
    if args.check == "tor-decomposition":
        y = _sequence(R, args.y, problem)
        rep = verify_tor_decomposition(M, e, y, top=_opt(args, problem, "top", 4))
    else:
        rep = verify_window_collapse(M, e, _opt(args, problem, "t", 1))
    out = {"check": rep.name, "status": rep.status, "rows": rep.rows, "detail": rep.detail}
    if rep.status == "fail":
        raise ConsistencyError(f"{rep.name} check failed: {json.dumps(out, sort_keys=True)}")
    return out, EXIT_LIMIT if rep.status == "partial" else EXIT_OK


def cmd_remark_example(args, problem):
    return remark_example(args.n, args.p), EXIT_OK


COMMANDS = {
    "ring-info": cmd_ring_info,
    "resolve": cmd_resolve,
    "tor-frob": cmd_tor_frob,
    "flatdim": cmd_flatdim,
    "koszul": cmd_koszul,
    "loewy-bounds": cmd_loewy_bounds,
    "cr-bound": cmd_cr_bound,
    "verify": cmd_verify,
    "remark-example": cmd_remark_example,
}


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def to_json(report) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def _is_table(value):
    return (isinstance(value, list) and value and all(isinstance(r, (list, dict)) for r in value)
            and all(not isinstance(x, (list, dict)) for r in value
                    for x in (r.values() if isinstance(r, dict) else r)))


def _table(rows):
    if isinstance(rows[0], dict):
        header = sorted({k for r in rows for k in r})
        body = [[_scalar(r.get(k)) for k in header] for r in rows]
    else:
        header = None
        body = [[_scalar(x) for x in r] for r in rows]
    grid = ([header] if header else []) + body
    widths = [max(len(row[j]) for row in grid if j < len(row)) for j in range(max(map(len, grid)))]
    return ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in grid]


def _scalar(x):
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    return str(x)


def to_text(report, indent=0) -> str:
    """Aligned key/value listing of the same data as the JSON report."""
    lines = []
    pad = "  " * indent
    keys = sorted(report)
    width = max((len(k) for k in keys), default=0)
    for k in keys:
        v = report[k]
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(to_text(v, indent + 1)) if v else None
        elif _is_table(v):
            lines.append(f"{pad}{k}:")
            lines.extend(f"{pad}  {row}" for row in _table(v))
        elif isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v):
            lines.append(f"{pad}{k}:")
            for j, x in enumerate(v):
                if isinstance(x, dict):
                    lines.append(f"{pad}  [{j}]")
                    lines.append(to_text(x, indent + 2))
                else:
                    lines.append(f"{pad}  [{j}] {json.dumps(x)}")
        elif isinstance(v, list):
            lines.append(f"{pad}{k.ljust(width)}  [{', '.join(_scalar(x) for x in v)}]")
        else:
            lines.append(f"{pad}{k.ljust(width)}  {_scalar(v)}")
    return "\n".join(line for line in lines if line is not None)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="frobflat",
        description="Flat dimension via Frobenius Tor vanishing over graded F_p-algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=None)
    common.add_argument("--max-degree", type=int, dest="max_degree")
    common.add_argument("--max-basis", type=int, dest="max_basis")
    common.add_argument("--seed", type=int)
    common.add_argument("--timings", action="store_true",
                        help="add wall-clock timings (makes output non-deterministic)")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file", help="JSON problem file")
        return sp

    with_file("ring-info", "dim, depth, multiplicity, Cohen-Macaulay and regularity")
    sp = with_file("resolve", "minimal free resolution Betti table")
    sp.add_argument("--length", type=int)
    sp = with_file("tor-frob", "Tor_i(M, ^{f^e}R) for a range of i")
    sp.add_argument("--e", type=int)
    sp.add_argument("--lo", type=int)
    sp.add_argument("--hi", type=int)
    sp = with_file("flatdim", "decide finiteness of the flat dimension")
    sp.add_argument("--method", choices=["frobenius", "oracle", "both"], default="frobenius")
    sp.add_argument("--e", type=int, action="append", help="Frobenius exponent (repeatable)")
    sp.add_argument("--t", type=int)
    sp.add_argument("--window", type=int)
    sp.add_argument("--consult-oracle", action="store_true")
    sp = with_file("koszul", "homology of the Koszul complex K(y; M)")
    sp.add_argument("--y", help="comma separated sequence (default: a system of parameters)")
    sp = with_file("loewy-bounds", "Loewy-length bounds for K(y; R)")
    sp.add_argument("--y")
    sp = with_file("cr-bound", "upper bound on c(R)")
    sp.add_argument("--trials", type=int)
    sp = with_file("verify", "cross-check Tor decomposition or window collapse")
    sp.add_argument("check", choices=["tor-decomposition", "window-collapse"])
    sp.add_argument("--e", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--y")
    sp.add_argument("--top", type=int)
    sp = sub.add_parser("remark-example", parents=[common],
                        help="Loewy bounds for F_p[x,y]/(x^n y, y^2)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, default=2)
    return parser


def run(argv=None):
    """Returns (report dict, exit code, output format)."""
    args = build_parser().parse_args(argv)
    fmt = args.format or "json"
    overrides = {"max_degree": args.max_degree, "max_basis": args.max_basis}
    report = {"command": args.command}
    start = time.perf_counter()
    try:
        problem = None
        if hasattr(args, "file"):
            problem = load_problem(args.file, overrides)
            fmt = args.format or problem.options.get("format", "json")
            report["input"] = args.file
            if args.command != "ring-info":
                report["ring"] = ring_block(problem.ring)
        result, code = COMMANDS[args.command](args, problem)
        report["result"] = result
    except InputError as exc:
        report["error"] = {"kind": "input", "message": str(exc)}
        code = EXIT_INPUT
    except PreconditionError as exc:
        report["error"] = {"kind": "precondition", "message": str(exc)}
        code = EXIT_INPUT
    except LimitError as exc:
        report["error"] = {"kind": "limit", "message": str(exc)}
        code = EXIT_LIMIT
    except ConsistencyError as exc:
        report["error"] = {"kind": "consistency", "message": str(exc)}
        code = EXIT_CONSISTENCY
    except FrobFlatError as exc:
        report["error"] = {"kind": "internal", "message": str(exc)}
        code = EXIT_CONSISTENCY
    if args.timings:
        report["resources"] = {"seconds": round(time.perf_counter() - start, 4)}
    report["exit_code"] = code
    return report, code, fmt


def main(argv=None):
    report, code, fmt = run(argv)
    text = to_json(report) if fmt == "json" else to_text(report)
    print(text)
    if "error" in report:
        print(f"frobflat: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
