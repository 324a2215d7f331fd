"""Parameter sweeps of Kossakowski spectra for the PSBR models, and CSV output."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cp_analysis import default_cp_tolerance, spectrum
from .errors import InvalidArgumentError
from .kossakowski import kossakowski_trace
from .models_psbr import PsbrParams, build_model

MODEL_NAMES = ("v", "lambda")


def default_ratios() -> tuple:
    return tuple(np.logspace(-1.0, 1.0, 50))


@dataclass(frozen=True)
class SweepSpec:
    models: tuple = MODEL_NAMES
    ratio_grid: tuple = field(default_factory=default_ratios)
    nbar_list: tuple = (0.01, 1.0, 100.0)
    p_list: tuple = (0.0, 0.5, 1.0)
    gamma2: float = 1.0

    def __post_init__(self):
        for name in ("models", "ratio_grid", "nbar_list", "p_list"):
            if len(getattr(self, name)) == 0:
                raise InvalidArgumentError(f"{name} must be nonempty")
        bad = [m for m in self.models if m not in MODEL_NAMES]
        if bad:
            raise InvalidArgumentError(f"unknown models {bad}")
        if not self.gamma2 > 0 or any(not r > 0 for r in self.ratio_grid):
            raise InvalidArgumentError("rates and ratios must be positive")
        if any(not nb >= 0 for nb in self.nbar_list) or any(not abs(p) <= 1 for p in self.p_list):
            raise InvalidArgumentError("need nbar >= 0 and |p| <= 1")

    @property
    def both_models(self) -> bool:
        return set(self.models) == set(MODEL_NAMES)


@dataclass(frozen=True)
class SweepRow:
    model: str
    ratio: float
    nbar: float
    p: float
    eigenvalues: np.ndarray
    min_ev: float
    is_cp: bool
    vlambda_diff: float | None = None


def point_spectrum(model, ratio, nbar, p, gamma2=1.0) -> np.ndarray:
    params = PsbrParams(gamma1=ratio * gamma2, gamma2=gamma2, nbar=nbar, p=p)
    return spectrum(kossakowski_trace(build_model(model, params)))


def _evaluate(args):
    return point_spectrum(*args)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[SweepRow]:
    """Spectra at every grid point, ordered by model, nbar, p, then ascending ratio.

    With ``jobs > 1`` points are computed in worker processes; the returned
    order does not depend on completion order.
    """
    ratios = sorted(spec.ratio_grid)
    keys = [
        (model, ratio, nbar, p, spec.gamma2)
        for model in spec.models
        for nbar in spec.nbar_list
        for p in spec.p_list
        for ratio in ratios
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            spectra = list(pool.map(_evaluate, keys, chunksize=16))
    else:
        spectra = [_evaluate(key) for key in keys]
    table = {key[:4]: ev for key, ev in zip(keys, spectra)}
    rows = []
    for key, ev in zip(keys, spectra):
        model, ratio, nbar, p, _ = key
        diff = None
        if spec.both_models:
            diff = float(np.max(np.abs(table["v", ratio, nbar, p] - table["lambda", ratio, nbar, p])))
        tol = default_cp_tolerance(ev)
        rows.append(SweepRow(model, ratio, nbar, p, ev, float(ev[-1]), bool(ev[-1] >= -tol), diff))
    return rows


def _fmt(x) -> str:
    return format(float(x), ".17g")


def csv_header(n_eigs: int, with_diff: bool) -> list[str]:
    cols = ["model", "gamma1_over_gamma2", "nbar", "p"]
    cols += [f"ev{k + 1}" for k in range(n_eigs)]
    cols += ["min_ev", "is_cp"]
    if with_diff:
        cols.append("vlambda_max_spectral_diff")
    return cols


def rows_to_csv(rows: list[SweepRow]) -> str:
    with_diff = bool(rows) and rows[0].vlambda_diff is not None
    n_eigs = len(rows[0].eigenvalues) if rows else 8
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(n_eigs, with_diff))
    for row in rows:
        line = [row.model, _fmt(row.ratio), _fmt(row.nbar), _fmt(row.p)]
        line += [_fmt(e) for e in row.eigenvalues]
        line += [_fmt(row.min_ev), "true" if row.is_cp else "false"]
        if with_diff:
            line.append(_fmt(row.vlambda_diff))
        writer.writerow(line)
    return buf.getvalue()
