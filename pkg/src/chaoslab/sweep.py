"""Parameter sweeps over (alpha, beta, lambda) with CSV/JSON emission.

A sweep walks a rectangular grid in deterministic order (alpha-major, then
beta, then lambda) and classifies each cell with the requested methods.
Lambda values are either absolute or window-relative: the interesting
window (lambda_g_low, lambda_max) moves with (alpha, beta), so relative
spacing puts every cell where the classification is defined instead of
wasting grid on inadmissible speeds.  Cells outside the window keep their
threshold columns but leave every verdict column blank -- blank, not
false -- so downstream plots stay honest.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .economy import (
    EPS_CMP,
    EPS_ROOT,
    EconomyParams,
    thresholds,
    trapping_interval,
)
from .gate import PI_SCAN_POINTS, Method, classify_closed_form, classify_numerical, gate_check

#: grid density used for the admissibility check inside sweeps
SWEEP_GATE_GRID = 256

CSV_COLUMNS = (
    "alpha",
    "beta",
    "lambda",
    "lambda_g_low",
    "lambda_pi",
    "lambda_chaos",
    "lambda_max",
    "in_class_g",
    "f2_of_m",
    "f3_of_m",
    "pi_max",
    "odd_cycle_cf",
    "turbulent_cf",
    "odd_cycle_num",
    "turbulent_num",
    "agree",
)


@dataclass(frozen=True)
class LambdaSpec:
    """How to place lambda values: kind is "absolute" or "window"."""

    kind: str
    count: int
    lo: float | None = None
    hi: float | None = None

    def __post_init__(self):
        if self.kind not in ("absolute", "window"):
            raise ValueError(f"lambda mode must be 'absolute' or 'window', got {self.kind!r}")
        if self.count < 1:
            raise ValueError(f"lambda count must be >= 1, got {self.count!r}")
        if self.kind == "absolute":
            if self.lo is None or self.hi is None:
                raise ValueError("absolute lambda mode needs lo and hi")
            if self.count > 1 and not self.lo < self.hi:
                raise ValueError("lambda lo must be < hi when count > 1")
            if not self.lo > 0.0:
                raise ValueError("lambda values must be positive")


@dataclass(frozen=True)
class SweepConfig:
    """Grid specification plus output options for one sweep run."""

    alpha_range: tuple[float, float, int]
    beta_range: tuple[float, float, int]
    lambda_spec: LambdaSpec
    methods: tuple[Method, ...] = (Method.CLOSED_FORM, Method.NUMERICAL)
    output_path: str | None = None
    output_format: str = "csv"

    def __post_init__(self):
        for name, (lo, hi, count) in (("alpha", self.alpha_range), ("beta", self.beta_range)):
            if count < 1:
                raise ValueError(f"{name} count must be >= 1, got {count!r}")
            if not (0.0 < lo < 1.0 and 0.0 < hi < 1.0):
                raise ValueError(f"{name} range must lie within (0, 1), got ({lo!r}, {hi!r})")
            if count > 1 and not lo < hi:
                raise ValueError(f"{name} lo must be < hi when count > 1")
        if not self.methods:
            raise ValueError("at least one method is required")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"output format must be 'csv' or 'json', got {self.output_format!r}")


@dataclass(frozen=True)
class SweepRow:
    """One grid cell; None marks a column left blank for that cell."""

    alpha: float
    beta: float
    lam: float
    lambda_g_low: float
    lambda_pi: float
    lambda_chaos: float
    lambda_max: float
    in_class_g: bool
    f2_of_m: float | None
    f3_of_m: float | None
    pi_max: float | None
    odd_cycle_cf: bool | None
    turbulent_cf: bool | None
    odd_cycle_num: bool | None
    turbulent_num: bool | None
    agree: bool | None


def _axis_values(lo: float, hi: float, count: int) -> list[float]:
    if count == 1:
        return [float(lo)]
    return [float(x) for x in np.linspace(lo, hi, count)]


def lambda_values(spec: LambdaSpec, lambda_g_low: float, lambda_max: float) -> list[float]:
    """Concrete lambda values for one (alpha, beta) cell.

    Window-relative mode places count midpoints strictly inside
    (lambda_g_low, lambda_max): fractions (j + 1/2)/count of the window
    width, which never touch the window edges.
    """
    if spec.kind == "absolute":
        return _axis_values(spec.lo, spec.hi, spec.count)
    width = lambda_max - lambda_g_low
    return [lambda_g_low + (j + 0.5) / spec.count * width for j in range(spec.count)]


def evaluate_cell(
    alpha: float,
    beta: float,
    lam: float,
    methods: tuple[Method, ...],
    *,
    eps_cmp: float = EPS_CMP,
    eps_root: float = EPS_ROOT,
    gate_grid: int = SWEEP_GATE_GRID,
    pi_scan: int = PI_SCAN_POINTS,
) -> SweepRow:
    """Classify one grid cell; outside the window all verdict columns are None."""
    params = EconomyParams(alpha=alpha, beta=beta, lam=lam)
    th = thresholds(params)
    base = dict(
        alpha=params.alpha,
        beta=params.beta,
        lam=params.lam,
        lambda_g_low=th.lambda_g_low,
        lambda_pi=th.lambda_pi,
        lambda_chaos=th.lambda_chaos,
        lambda_max=th.lambda_max,
    )
    if not th.lambda_g_low < lam < th.lambda_max:
        return SweepRow(
            **base,
            in_class_g=False,
            f2_of_m=None,
            f3_of_m=None,
            pi_max=None,
            odd_cycle_cf=None,
            turbulent_cf=None,
            odd_cycle_num=None,
            turbulent_num=None,
            agree=None,
        )
    interval = trapping_interval(params)
    gate = gate_check(params, interval, gate_grid, eps_cmp=eps_cmp)
    cf = (
        classify_closed_form(params, eps_cmp=eps_cmp)
        if Method.CLOSED_FORM in methods
        else None
    )
    num = (
        classify_numerical(params, interval, eps_cmp=eps_cmp, eps_root=eps_root, n_scan=pi_scan)
        if Method.NUMERICAL in methods
        else None
    )
    audit = num if num is not None else cf
    agree = None
    if cf is not None and num is not None:
        agree = (
            cf.odd_cycle == num.odd_cycle
            and cf.turbulent_second_iterate == num.turbulent_second_iterate
        )
    return SweepRow(
        **base,
        in_class_g=gate.in_class_g,
        f2_of_m=audit.f2_of_m,
        f3_of_m=audit.f3_of_m,
        pi_max=audit.pi_max,
        odd_cycle_cf=None if cf is None else cf.odd_cycle,
        turbulent_cf=None if cf is None else cf.turbulent_second_iterate,
        odd_cycle_num=None if num is None else num.odd_cycle,
        turbulent_num=None if num is None else num.turbulent_second_iterate,
        agree=agree,
    )


def _cells(config: SweepConfig) -> list[tuple[float, float, float]]:
    out = []
    for alpha in _axis_values(*config.alpha_range):
        for beta in _axis_values(*config.beta_range):
            params = EconomyParams(alpha=alpha, beta=beta, lam=1.0)
            th = thresholds(params)
            for lam in lambda_values(config.lambda_spec, th.lambda_g_low, th.lambda_max):
                out.append((alpha, beta, lam))
    return out


def _eval_chunk(chunk, methods, eps_cmp, eps_root):
    return [
        evaluate_cell(alpha, beta, lam, methods, eps_cmp=eps_cmp, eps_root=eps_root)
        for alpha, beta, lam in chunk
    ]


def run_sweep(
    config: SweepConfig,
    *,
    jobs: int = 1,
    eps_cmp: float = EPS_CMP,
    eps_root: float = EPS_ROOT,
) -> list[SweepRow]:
    """Evaluate every grid cell, in deterministic alpha/beta/lambda order.

    With jobs > 1, cells are chunked onto worker processes; chunks are
    merged back in submission order so the row order (and any emitted
    file) is identical to a serial run.
    """
    cells = _cells(config)
    if jobs <= 1 or len(cells) < 64:
        return _eval_chunk(cells, config.methods, eps_cmp, eps_root)
    n_chunks = min(len(cells), jobs * 8)
    chunks = [cells[i::n_chunks] for i in range(n_chunks)]
    ordered: list[list[SweepRow]]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        ordered = list(
            pool.map(
                _eval_chunk,
                chunks,
                [config.methods] * n_chunks,
                [eps_cmp] * n_chunks,
                [eps_root] * n_chunks,
            )
        )
    # interleaved chunks ([i::n]) are merged back by round-robin to restore order
    merged: list[SweepRow] = []
    for j in range(len(chunks[0])):
        for rows in ordered:
            if j < len(rows):
                merged.append(rows[j])
    return merged


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _row_cells(row: SweepRow) -> list[str]:
    return [
        _fmt(row.alpha),
        _fmt(row.beta),
        _fmt(row.lam),
        _fmt(row.lambda_g_low),
        _fmt(row.lambda_pi),
        _fmt(row.lambda_chaos),
        _fmt(row.lambda_max),
        _fmt(row.in_class_g),
        _fmt(row.f2_of_m),
        _fmt(row.f3_of_m),
        _fmt(row.pi_max),
        _fmt(row.odd_cycle_cf),
        _fmt(row.turbulent_cf),
        _fmt(row.odd_cycle_num),
        _fmt(row.turbulent_num),
        _fmt(row.agree),
    ]


def write_rows_csv(rows: list[SweepRow], stream: io.TextIOBase, metadata: list[str]) -> None:
    """CSV with '#' metadata lines, a header row, and 17-significant-digit floats."""
    for line in metadata:
        stream.write(f"# {line}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(_row_cells(row))


def row_dict(row: SweepRow) -> dict:
    """The row as a JSON-ready mapping; keys mirror the CSV columns 1:1."""
    return {
        "alpha": row.alpha,
        "beta": row.beta,
        "lambda": row.lam,
        "lambda_g_low": row.lambda_g_low,
        "lambda_pi": row.lambda_pi,
        "lambda_chaos": row.lambda_chaos,
        "lambda_max": row.lambda_max,
        "in_class_g": row.in_class_g,
        "f2_of_m": row.f2_of_m,
        "f3_of_m": row.f3_of_m,
        "pi_max": row.pi_max,
        "odd_cycle_cf": row.odd_cycle_cf,
        "turbulent_cf": row.turbulent_cf,
        "odd_cycle_num": row.odd_cycle_num,
        "turbulent_num": row.turbulent_num,
        "agree": row.agree,
    }


def write_rows_json(rows: list[SweepRow], stream: io.TextIOBase, metadata: list[str]) -> None:
    doc = {
        "tool": {"name": "chaoslab", "version": __version__},
        "metadata": metadata,
        "rows": [row_dict(r) for r in rows],
    }
    json.dump(doc, stream, indent=2)
    stream.write("\n")
