"""Command-line interface.

Exit codes: 0 success, 1 selftest failure, 2 usage or input error,
3 dissipator validation failure, 4 rates not representable by a Kossakowski
matrix.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import cp_analysis, kossakowski, linalg_core, models_psbr, selftest, sun_basis, superop
from .errors import (
    InvalidArgumentError,
    InvalidDissipatorError,
    InvalidDocumentError,
    NonGKLSRepresentableError,
)
from .sweep import SweepSpec, default_ratios, rows_to_csv, run_sweep

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_NON_GKLS = 4


class UsageError(Exception):
    pass


def _pairs(mat):
    return np.stack([mat.real, mat.imag], axis=-1).tolist()


def _fmt_complex(z):
    return f"{z.real:+.6f}{z.imag:+.6f}j"


def cmd_basis(args, out):
    if args.n < 2:
        raise UsageError(f"--n must be >= 2, got {args.n}")
    basis, sc = sun_basis.su_n(args.n)
    for idx, mat in enumerate(basis.matrices):
        out(f"F_{idx} =")
        for row in mat:
            out("  [" + ", ".join(_fmt_complex(z) for z in row) + "]")
    res = basis.orthonormality_residual()
    nonzero_f = int(np.count_nonzero(np.abs(sc.f) > 1e-14))
    nonzero_d = int(np.count_nonzero(np.abs(sc.d) > 1e-14))
    out(f"matrices: {len(basis.matrices)}")
    out(f"orthonormality residual: {res:.3e}")
    out(f"nonzero f_ijk: {nonzero_f}, nonzero d_ijk: {nonzero_d}")
    return EXIT_OK if res < 1e-14 else EXIT_FAIL


def _params_from_args(args):
    return models_psbr.PsbrParams(
        gamma1=args.gamma1, gamma2=args.gamma2, nbar=args.nbar, p=args.p, r1=args.r1, r2=args.r2
    )


def _load_dissipator(args):
    if args.input is not None:
        try:
            return superop.load(args.input)
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from exc
    if args.model is None:
        raise UsageError("give either --model or --input")
    return models_psbr.build_model(args.model, _params_from_args(args))


def kossakowski_report(L, method="trace", tol=None) -> dict:
    """JSON-ready extraction report used by the ``kossakowski`` subcommand."""
    report = {"n": L.n, "method": method}
    results = {}
    if method in ("trace", "both"):
        results["trace"] = kossakowski.kossakowski_trace(L)
    if method in ("pinv", "both"):
        results["pinv"] = kossakowski.kossakowski_via_coherence(L)
    primary = results["trace"] if "trace" in results else results["pinv"]
    verdict = cp_analysis.cp_verdict(primary, tol)
    report["A"] = _pairs(primary.A)
    report["eigenvalues"] = verdict.eigenvalues.tolist()
    report["cp"] = {
        "is_cp": verdict.is_cp,
        "min_eigenvalue": verdict.min_eigenvalue,
        "tolerance": verdict.tolerance_used,
    }
    report["hermitization_residual"] = primary.hermitization_residual
    if method == "both":
        diff = results["trace"].A - results["pinv"].A
        report["A_pinv"] = _pairs(results["pinv"].A)
        report["pinv_hermitization_residual"] = results["pinv"].hermitization_residual
        report["discrepancy_frobenius"] = float(np.linalg.norm(diff))
    return report


def cmd_kossakowski(args, out):
    L = _load_dissipator(args)
    try:
        report = kossakowski_report(L, args.method, args.tol)
    except InvalidDissipatorError as exc:
        out(json.dumps({"error": "invalid-dissipator", "message": str(exc), **exc.report.as_dict()}))
        return EXIT_INVALID
    except NonGKLSRepresentableError as exc:
        out(json.dumps({"error": "non-gkls-representable", "message": str(exc), "residual": exc.residual}))
        return EXIT_NON_GKLS
    text = json.dumps(report, indent=2)
    if args.out:
        _write(args.out, text + "\n")
    else:
        out(text)
    return EXIT_OK


def _write(path, text):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def cmd_sweep(args, out):
    models = tuple(_sweep_models(args.model))
    spec = SweepSpec(
        models=models,
        ratio_grid=tuple(args.ratios) if args.ratios else default_ratios(),
        nbar_list=tuple(args.nbar),
        p_list=tuple(args.p),
        gamma2=args.gamma2,
    )
    out_path = Path(args.out)
    if out_path.parent and not out_path.parent.is_dir():
        raise UsageError(f"cannot write {args.out}: directory does not exist")
    rows = run_sweep(spec, jobs=args.jobs)
    _write(args.out, rows_to_csv(rows))
    n_cp = sum(row.is_cp for row in rows)
    out(f"wrote {len(rows)} rows to {args.out} ({n_cp} completely positive)")
    return EXIT_OK


def _sweep_models(name):
    return ("v", "lambda") if name in (None, "both") else (name,)


def cmd_svd_tensor(args, out):
    if args.n < 2:
        raise UsageError(f"--n must be >= 2, got {args.n}")
    t = kossakowski.tensor_for(args.n)
    sv = t.square_singular_values
    zeros = int(sv.size - linalg_core.numerical_rank(sv))
    for value in sv:
        out(format(float(value), ".17g"))
    out(f"count: {sv.size}")
    out(f"zero singular values (< 1e-10 * sigma_max): {zeros}")
    return EXIT_OK


def cmd_selftest(args, out):
    return EXIT_OK if selftest.run_all(out) else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lindform",
        description="Kossakowski matrices, Lindblad forms and CP tests for Markovian dissipators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_basis = sub.add_parser("basis", help="print the SU(n) generator basis")
    p_basis.add_argument("--n", type=int, required=True)


    p_koss = sub.add_parser("kossakowski", help="extract the Kossakowski matrix")
    p_koss.add_argument("--model", choices=["v", "lambda"])
    p_koss.add_argument("--input", help="Liouvillian JSON document")
    p_koss.add_argument("--method", choices=["trace", "pinv", "both"], default="trace")
    p_koss.add_argument("--tol", type=float, default=None, help="CP tolerance on the smallest eigenvalue")
    p_koss.add_argument("--out", help="write the JSON report here instead of stdout")
    p_koss.add_argument("--gamma1", type=float, default=1.0)
    p_koss.add_argument("--gamma2", type=float, default=1.0)
    p_koss.add_argument("--nbar", type=float, default=0.0)
    p_koss.add_argument("--p", type=float, default=0.0)
    p_koss.add_argument("--r1", type=float, default=None, help="pumping rate override (default nbar*gamma1)")
    p_koss.add_argument("--r2", type=float, default=None, help="pumping rate override (default nbar*gamma2)")

    p_sweep = sub.add_parser("sweep", help="Kossakowski spectra over a parameter grid, as CSV")
    p_sweep.add_argument("--model", choices=["v", "lambda", "both"], default="both")
    p_sweep.add_argument("--ratios", type=float, nargs="+", help="gamma1/gamma2 grid")
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.add_argument("--gamma2", type=float, default=1.0, help="reference decay rate")
    p_sweep.add_argument("--nbar", type=float, nargs="+", default=[0.01, 1.0, 100.0])
    p_sweep.add_argument("--p", type=float, nargs="+", default=[0.0, 0.5, 1.0])

    p_svd = sub.add_parser("svd-tensor", help="singular values of the square transformation tensor")
    p_svd.add_argument("--n", type=int, required=True)

    sub.add_parser("selftest", help="run the invariant suite")
    return parser


COMMANDS = {
    "basis": cmd_basis,
    "kossakowski": cmd_kossakowski,
    "sweep": cmd_sweep,
    "svd-tensor": cmd_svd_tensor,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = print
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, InvalidArgumentError, InvalidDocumentError) as exc:
        print(f"lindform {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
