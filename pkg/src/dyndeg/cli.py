"""``dyndeg`` command line.

Every subcommand writes one JSON run report.  Exit codes: 0 success,
2 invalid input, 3 computation failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .fab import (
    PoleError,
    chi_formula,
    fx_matrix,
    fy_basis,
    fy_matrix,
    lambda_n,
    vn_residual,
    vn_search,
)
from .intpoly import count_real_roots
from .io import RunReport, SpecError, load_json_arg, parse_matrix, validate_spec
from .irrationality import HypothesisError, certify_irrational
from .linalg import SpectralConvergenceError, charpoly, mat_pow, spectral_radius
from .matinv import (
    ReductionError,
    build_I,
    build_J,
    build_K,
    cyclic_subspace,
    delta_K,
    jx_basis,
    jx_pullback,
    k_degree,
    symmetric_cyclic_subspace,
    symmetric_subspace,
)
from .monomial import MonomialMap, degp_matrix, dynamical_degrees, log_concavity_check, projectivize
from .oracle import DegenerateSampleError, RationalMapSpec, degree_sequence, delta_estimate

__all__ = ["main", "dispatch", "build_parser", "replay_report", "OUT_DIR_ENV"]

OUT_DIR_ENV = "DYNDEG_OUT_DIR"

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE = 0, 2, 3

SUBSPACES = {
    "symmetric": symmetric_subspace,
    "cyclic": cyclic_subspace,
    "symmetric-cyclic": symmetric_cyclic_subspace,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    g.add_argument("--trials", type=int, default=5, help="oracle trials (default 5)")
    g.add_argument("--tol", type=float, default=1e-12, help="bracket width for certified roots")
    g.add_argument("--out", help=f"report path (relative paths resolve under ${OUT_DIR_ENV} if set)")
    g.add_argument("--csv", help="also write the degree sequence as CSV")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="dyndeg", description="Dynamical degrees of rational maps.")
    parser.add_argument("--version", action="version", version=f"dyndeg {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("degseq", parents=[common], help="degree sequence by the line oracle")
    p.add_argument("--map", required=True, help="map spec JSON file or inline JSON")
    p.add_argument("--n", type=int, required=True, help="number of iterates")
    p.add_argument("--subspace", choices=sorted(SUBSPACES), help="restrict a matinv map to an invariant subspace")
    p.set_defaults(handler=_cmd_degseq)

    p = sub.add_parser("monomial", parents=[common], help="monomial map f_A")
    p.add_argument("--matrix", required=True, help="exponent matrix, JSON file or inline")
    p.add_argument("--all-degrees", action="store_true", help="emit Deg_p for every p")
    p.add_argument("--n", type=int, default=0, help="also run the oracle to this many iterates")
    p.set_defaults(handler=_cmd_monomial)

    p = sub.add_parser("matinv", parents=[common], help="matrix inversion maps J, I, K")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--which", choices=["J", "I", "K"], default="K")
    p.add_argument("--mode", choices=["symbolic", "oracle"], default="symbolic")
    p.add_argument("--n", type=int, default=0, help="oracle iterates (default: none in symbolic mode, 3 in oracle mode)")
    p.add_argument("--emit-spec", action="store_true", help="include the symbolic components in the report")
    p.set_defaults(handler=_cmd_matinv)

    p = sub.add_parser("fab", help="the f_(a,b) family")
    fsub = p.add_subparsers(dest="fab_command", metavar="ACTION", parser_class=_Parser)
    fsub.required = True
    q = fsub.add_parser("chi", parents=[common], help="characteristic polynomial chi_n")
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(handler=_cmd_fab_chi)
    q = fsub.add_parser("lambda", parents=[common], help="largest real root of chi_n")
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(handler=_cmd_fab_lambda)
    q = fsub.add_parser("search", parents=[common], help="Newton search for V_n parameters")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--restarts", type=int, default=64)
    q.set_defaults(handler=_cmd_fab_search)
    q = fsub.add_parser("degseq", parents=[common], help="oracle degrees of f_(a,b) over F_p")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--prime", required=True)
    q.add_argument("--n", type=int, default=8)
    q.add_argument("--vn", type=int, help="compare against f_Y^* for this orbit length instead of f_X^*")
    q.set_defaults(handler=_cmd_fab_degseq)

    p = sub.add_parser("certify", parents=[common], help="irrationality certificate for a unimodular matrix")
    p.add_argument("--matrix", required=True)
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial and spectral radius")
    p.add_argument("--matrix", required=True)
    p.set_defaults(handler=_cmd_charpoly)
    return parser


# -- handlers ----------------------------------------------------------------------
# Each returns (input document, results, provenance, warnings, csv rows or None).


def _degree_rows(report) -> list[list]:
    rows = [["n", "degree", "ratio", "agreement"]]
    for n, d in enumerate(report.degrees):
        ratio = "" if n == 0 else repr(report.degrees[n] / report.degrees[n - 1])
        rows.append([n, str(d), ratio, report.agreement[n]])
    return rows


def _oracle_block(report) -> tuple[dict, dict]:
    j = report.to_json()
    prov = j.pop("provenance")
    if report.N >= 2:
        j["delta_estimate"] = delta_estimate(report).to_json()
    j["submultiplicative"] = report.submultiplicative()
    return j, prov


def _cmd_degseq(args, replay=None):
    doc = load_json_arg(args.map)
    loaded = validate_spec(doc)
    subspace = None
    if args.subspace:
        if loaded.kind != "matinv":
            raise SpecError("--subspace applies only to matinv maps")
        subspace = SUBSPACES[args.subspace](loaded.meta["q"])
    rep = degree_sequence(loaded.map, args.n, args.trials, args.seed, subspace=subspace, replay=replay)
    results, prov = _oracle_block(rep)
    results["map_kind"] = loaded.kind
    results["map_meta"] = loaded.meta
    if args.subspace:
        results["subspace"] = args.subspace
    return doc, results, prov, loaded.warnings, _degree_rows(rep)


def _cmd_monomial(args, replay=None):
    doc = load_json_arg(args.matrix)
    A = parse_matrix(doc)
    try:
        mm = MonomialMap(A)
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    spec = projectivize(mm)
    k = mm.k
    ps = range(1, k + 1) if args.all_degrees else [1]
    deltas = dynamical_degrees(mm, args.tol)
    ok, bad = log_concavity_check([1.0] + deltas)
    results = {
        "matrix": A.to_json(),
        "projectivized": {
            "display": "[" + " : ".join(str(c) for c in spec.components) + "]",
            "spec": spec.to_json(),
        },
        "deg1": spec.degree,
        "Deg": {str(p): degp_matrix(mm, p).to_json() for p in ps},
        "basis_order": "sorted p-subsets of {1..k} in lexicographic order",
        "dynamical_degrees": deltas,
        "log_concave": {"ok": ok, "first_violation": bad},
    }
    prov: dict = {}
    rows = None
    if args.n:
        rep = degree_sequence(spec, args.n, args.trials, args.seed, replay=replay)
        results["oracle"], prov = _oracle_block(rep)
        rows = _degree_rows(rep)
    return doc, results, prov, [], rows


def _cmd_matinv(args, replay=None):
    doc = {"q": args.q, "which": args.which, "mode": args.mode}
    try:
        if args.which == "J":
            ms = build_J(args.q)
        elif args.which == "I":
            ms = build_I(args.q)
        else:
            ms = build_K(args.q, mode=args.mode)
    except ValueError as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(str(exc)) from None
    q = args.q
    results: dict = {
        "q": q,
        "which": args.which,
        "mode": args.mode,
        "expected_degree": {"J": q * q - 1, "I": q - 1, "K": k_degree(q)}[args.which],
        "delta": delta_K(q) if args.which == "K" else 1.0,
        "jx_pullback": {"basis": jx_basis(q), "matrix": jx_pullback(q).to_json()},
    }
    if isinstance(ms.map, RationalMapSpec):
        results["degree"] = ms.map.degree
        if args.emit_spec:
            results["spec"] = ms.map.to_json()
    n = args.n or (3 if args.mode == "oracle" else 0)
    prov: dict = {}
    rows = None
    if n:
        rep = degree_sequence(ms.map, n, args.trials, args.seed, replay=replay)
        results["oracle"], prov = _oracle_block(rep)
        results.setdefault("degree", rep.degrees[1])
        rows = _degree_rows(rep)
    return doc, results, prov, [], rows


def _check_n(n: int):
    if n < 0:
        raise SpecError("--n must be nonnegative")


def _cmd_fab_chi(args, replay=None):
    _check_n(args.n)
    chi = chi_formula(args.n)
    M = fy_matrix(args.n)
    results = {
        "n": args.n,
        "coeffs": chi.to_json(),
        "display": str(chi),
        "degree": chi.degree,
        "fy_basis": fy_basis(args.n),
        "fy_matrix": M.to_json(),
        "charpoly_matches": charpoly(M) == chi,
    }
    return {"n": args.n}, results, {}, [], None


def _cmd_fab_lambda(args, replay=None):
    _check_n(args.n)
    res = lambda_n(args.n, args.tol)
    results = {"n": args.n, **res.to_json()}
    return {"n": args.n}, results, {}, [], None


def _cmd_fab_search(args, replay=None):
    _check_n(args.n)
    cands = vn_search(args.n, seed=args.seed, restarts=args.restarts)
    out = []
    for c in cands:
        j = c.to_json()
        j["residual"] = vn_residual(c, args.n)
        out.append(j)
    results = {"n": args.n, "restarts": args.restarts, "candidates": out, "count": len(out)}
    return {"n": args.n, "restarts": args.restarts}, results, {"seed": args.seed}, [], None


def _cmd_fab_degseq(args, replay=None):
    try:
        p = int(args.prime)
        a, b = int(args.a) % p, int(args.b) % p
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    doc = {"kind": "fab", "a": str(a), "b": str(b), "field": {"prime": str(p)}}
    loaded = validate_spec(doc)
    rep = degree_sequence(loaded.map, args.n, args.trials, args.seed, replay=replay)
    results, prov = _oracle_block(rep)
    M = fx_matrix() if args.vn is None else fy_matrix(args.vn)
    picard = [mat_pow(M, n)[0, 0] for n in range(args.n + 1)]
    results["picard_entries"] = [str(v) for v in picard]
    results["picard_matrix"] = "f_X" if args.vn is None else f"f_Y(n={args.vn})"
    results["picard_agrees"] = picard == rep.degrees
    return doc, results, prov, [], _degree_rows(rep)


def _cmd_certify(args, replay=None):
    doc = load_json_arg(args.matrix)
    M = parse_matrix(doc)
    v = certify_irrational(M, args.tol)
    return doc, {"verdict": v.to_json()}, {}, [], None


def _cmd_charpoly(args, replay=None):
    doc = load_json_arg(args.matrix)
    M = parse_matrix(doc)
    cp = charpoly(M)
    sr = spectral_radius(M, args.tol)
    results = {
        "coeffs": cp.to_json(),
        "display": str(cp),
        "det": str(M.det()),
        "spectral_radius": sr.to_json(),
        "real_roots_above_1": count_real_roots(cp, 1, sr.hi + 1),
    }
    return doc, results, {}, [], None


# -- dispatch ---------------------------------------------------------------------

COMPUTE_ERRORS = (DegenerateSampleError, SpectralConvergenceError, ReductionError, PoleError, ArithmeticError)
INPUT_ERRORS = (SpecError, HypothesisError)


def _resolve_out(path: str | None, command: str, digest: str) -> Path | None:
    base = os.environ.get(OUT_DIR_ENV)
    if path is None:
        if not base:
            return None
        return Path(base) / f"{command}-{digest[:12]}.json"
    p = Path(path)
    if not p.is_absolute() and base:
        p = Path(base) / p
    return p


def _run(args, argv: list[str], replay=None) -> RunReport:
    start = time.perf_counter()
    doc, results, prov, warnings, rows = args.handler(args, replay)
    elapsed = time.perf_counter() - start
    prov = dict(prov)
    prov.setdefault("seed", args.seed)
    prov["trials"] = args.trials
    rep = RunReport(argv, doc, prov, results, round(elapsed, 6), __version__, warnings)
    rep.csv_rows = rows  # type: ignore[attr-defined]
    return rep


def dispatch(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> tuple[int, RunReport | None]:
    """Parse ``argv``, run the command and write its report.

    Returns ``(exit code, report)``; the report is None on failure.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    command = args.command if args.command != "fab" else f"fab-{args.fab_command}"
    try:
        report = _run(args, argv)
    except INPUT_ERRORS as exc:
        print(f"dyndeg: invalid input: {exc}", file=stderr)
        return EXIT_INPUT, None
    except COMPUTE_ERRORS as exc:
        print(f"dyndeg: computation failed: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_COMPUTE, None
    except ValueError as exc:
        print(f"dyndeg: invalid input: {exc}", file=stderr)
        return EXIT_INPUT, None

    text = report.dumps()
    out = _resolve_out(args.out, command, report.results_digest)
    if out is None:
        stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        print(f"dyndeg: report written to {out}", file=stderr)
    if args.csv and report.csv_rows:
        cpath = _resolve_out(args.csv, command, report.results_digest)
        cpath.parent.mkdir(parents=True, exist_ok=True)
        with open(cpath, "w", newline="") as fh:
            csv.writer(fh).writerows(report.csv_rows)
    return EXIT_OK, report


def replay_report(report: dict) -> RunReport:
    """Rerun a recorded report from its command, inline input and recorded
    ``(prime, attempt)`` samples.  The input files need not exist any more."""
    argv = list(report["command"])
    args = build_parser().parse_args(argv)
    for attr in ("map", "matrix"):
        if getattr(args, attr, None) is not None:
            setattr(args, attr, json.dumps(report["input"]))
    replay = report.get("provenance", {}).get("replay")
    if replay is not None:
        replay = [(int(p), int(a)) for p, a in replay]
    return _run(args, argv, replay)


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = dispatch(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
