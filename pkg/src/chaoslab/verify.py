"""Cross-validation suite: the checks behind the `verify` subcommand.

Four groups of evidence:

1. verdict agreement of the closed-form and numerical classifiers over a
   dense parameter grid (excluding a thin relative band around
   lambda_chaos, where floating point cannot resolve the boundary);
2. the second-iterate sign note: the transcribed piecewise rule for
   sign(f^2(m) - m) has its direction flipped, so the suite reports rule
   vs. direct evaluation side by side without asserting agreement;
3. the third-iterate factored identity, which must hold to 1e-9;
4. low-period oracle equivalence: scan-found fixed points and two-cycles
   must match their closed forms to 1e-9.

Everything runs from a fixed internal seed; two runs produce identical
reports byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .economy import (
    EPS_CMP,
    EPS_ROOT,
    EconomyParams,
    critical_point,
    price_map,
    thresholds,
    trapping_interval,
)
from .gate import (
    PI_SCAN_POINTS,
    EndpointGapReport,
    SecondIterateSignReport,
    endpoint_gap_report,
    classify_closed_form,
    classify_numerical,
    fixed_point,
    period2_points,
    second_iterate_sign_report,
)
from .orbits import find_periodic_orbits

#: showcase parameters used for the informational notes
NOTE_POINT = (0.75, 0.5, 3.61)
#: relative exclusion band around lambda_chaos for the agreement grid
EPS_BAND = 1e-6
#: fixed seed; determinism of the report depends on it
_SEED = 20260810


@dataclass(frozen=True)
class Disagreement:
    alpha: float
    beta: float
    lam: float
    odd_cf: bool
    odd_num: bool
    turb_cf: bool
    turb_num: bool


@dataclass
class VerifyResult:
    """Outcome of the full suite; passed covers the asserted groups only."""

    grid_shape: tuple[int, int, int]
    cells_checked: int = 0
    cells_skipped_band: int = 0
    disagreements: list[Disagreement] = field(default_factory=list)
    sign_note_point: tuple[float, float, float] = NOTE_POINT
    sign_note: SecondIterateSignReport | None = None
    endpoint_note: EndpointGapReport | None = None
    factor_checks: int = 0
    factor_max_err: float = 0.0
    oracle_checks: int = 0
    oracle_max_err: float = 0.0
    oracle_failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            not self.disagreements
            and not self.oracle_failures
            and self.factor_max_err <= 1e-9
            and self.oracle_max_err <= 1e-9
        )


def _window_triples(rng: np.random.Generator, count: int) -> list[EconomyParams]:
    triples = []
    for _ in range(count):
        alpha = float(rng.uniform(0.05, 0.95))
        beta = float(rng.uniform(0.05, 0.95))
        frac = float(rng.uniform(0.05, 0.95))
        th = thresholds(EconomyParams(alpha=alpha, beta=beta, lam=1.0))
        lam = th.lambda_g_low + frac * (th.lambda_max - th.lambda_g_low)
        triples.append(EconomyParams(alpha=alpha, beta=beta, lam=lam))
    return triples


def check_agreement(
    result: VerifyResult,
    alpha_count: int,
    beta_count: int,
    lambda_count: int,
    *,
    eps_band: float = EPS_BAND,
    eps_cmp: float = EPS_CMP,
    eps_root: float = EPS_ROOT,
    pi_scan: int = PI_SCAN_POINTS,
) -> None:
    """Closed-form vs numerical verdicts over the grid; disagreements collected."""
    for alpha in np.linspace(0.05, 0.95, alpha_count):
        for beta in np.linspace(0.05, 0.95, beta_count):
            params0 = EconomyParams(alpha=float(alpha), beta=float(beta), lam=1.0)
            th = thresholds(params0)
            width = th.lambda_max - th.lambda_g_low
            for j in range(lambda_count):
                lam = th.lambda_g_low + (j + 0.5) / lambda_count * width
                if abs(lam - th.lambda_chaos) <= eps_band * th.lambda_chaos:
                    result.cells_skipped_band += 1
                    continue
                params = EconomyParams(alpha=float(alpha), beta=float(beta), lam=lam)
                interval = trapping_interval(params)
                cf = classify_closed_form(params, eps_cmp=eps_cmp)
                num = classify_numerical(
                    params, interval, eps_cmp=eps_cmp, eps_root=eps_root, n_scan=pi_scan
                )
                result.cells_checked += 1
                if (
                    cf.odd_cycle != num.odd_cycle
                    or cf.turbulent_second_iterate != num.turbulent_second_iterate
                ):
                    result.disagreements.append(
                        Disagreement(
                            alpha=float(alpha),
                            beta=float(beta),
                            lam=lam,
                            odd_cf=cf.odd_cycle,
                            odd_num=num.odd_cycle,
                            turb_cf=cf.turbulent_second_iterate,
                            turb_num=num.turbulent_second_iterate,
                        )
                    )


def check_factor_identity(result: VerifyResult, triples: list[EconomyParams]) -> None:
    """Direct f^3(m) - z against the factored form on random window triples."""
    for params in triples:
        f = price_map(params)
        m = critical_point(params)
        z = fixed_point(params)
        f2m = float(f(f(m)))
        direct = float(f(f2m)) - z
        factored = (f2m - z) * (1.0 - 2.0 * params.beta * params.lam / (f2m * z))
        err = abs(direct - factored)
        result.factor_checks += 1
        result.factor_max_err = max(result.factor_max_err, err)


def check_low_period_oracle(
    result: VerifyResult, triples: list[EconomyParams], *, eps_root: float = EPS_ROOT
) -> None:
    """Scan-found orbits of period <= 2 must match the closed forms to 1e-9.

    The two-cycle is only demanded from the scan when its points are
    comfortably separated from the fixed point (a zero discriminant makes
    the crossing tangent, which a sign scan legitimately cannot see).
    """
    for params in triples:
        interval = trapping_interval(params)
        orbits = find_periodic_orbits(params, interval, 2, eps_root=eps_root)
        z = fixed_point(params)
        pair = period2_points(params)
        by_period = {1: [], 2: []}
        for orb in orbits:
            by_period[orb.period].append(orb)
        tag = f"alpha={params.alpha!r} beta={params.beta!r} lambda={params.lam!r}"

        if len(by_period[1]) != 1:
            result.oracle_failures.append(f"{tag}: expected exactly one fixed orbit")
        else:
            err = abs(by_period[1][0].points[0] - z)
            result.oracle_max_err = max(result.oracle_max_err, err)

        separation = 0.0 if pair is None else pair[1] - pair[0]
        two_cycle_in_e = pair is not None and interval.a <= pair[0] and pair[1] <= interval.b
        expect_pair = two_cycle_in_e and separation > 1e-5 * interval.b
        if expect_pair and not by_period[2]:
            result.oracle_failures.append(f"{tag}: two-cycle not found by scan")
        for orb in by_period[2]:
            if pair is None:
                result.oracle_failures.append(f"{tag}: scan found a two-cycle, closed form has none")
                continue
            err = max(abs(orb.points[0] - pair[0]), abs(orb.points[1] - pair[1]))
            result.oracle_max_err = max(result.oracle_max_err, err)
        result.oracle_checks += 1


def run_verify(
    alpha_count: int = 20,
    beta_count: int = 20,
    lambda_count: int = 50,
    *,
    triples: int = 100,
    eps_band: float = EPS_BAND,
    eps_cmp: float = EPS_CMP,
    eps_root: float = EPS_ROOT,
    pi_scan: int = PI_SCAN_POINTS,
) -> VerifyResult:
    """Run all four groups and return the collected evidence."""
    result = VerifyResult(grid_shape=(alpha_count, beta_count, lambda_count))
    check_agreement(
        result, alpha_count, beta_count, lambda_count,
        eps_band=eps_band, eps_cmp=eps_cmp, eps_root=eps_root, pi_scan=pi_scan,
    )
    note_params = EconomyParams(alpha=NOTE_POINT[0], beta=NOTE_POINT[1], lam=NOTE_POINT[2])
    result.sign_note = second_iterate_sign_report(note_params)
    result.endpoint_note = endpoint_gap_report(note_params)
    rng = np.random.default_rng(_SEED)
    sample = _window_triples(rng, triples)
    check_factor_identity(result, sample)
    check_low_period_oracle(result, sample, eps_root=eps_root)
    return result


def format_report(result: VerifyResult) -> str:
    """Human-readable, byte-stable report."""
    lines = []
    na, nb, nl = result.grid_shape
    status = "FAIL" if result.disagreements else "PASS"
    lines.append(
        f"[{status}] cross-method agreement: {na}x{nb}x{nl} grid, "
        f"{result.cells_checked} cells checked, "
        f"{result.cells_skipped_band} skipped inside the lambda_chaos band, "
        f"{len(result.disagreements)} disagreements"
    )
    for d in result.disagreements[:10]:
        lines.append(
            f"    disagree at alpha={d.alpha!r} beta={d.beta!r} lambda={d.lam!r}: "
            f"odd {d.odd_cf}/{d.odd_num} turbulent {d.turb_cf}/{d.turb_num}"
        )
    if result.sign_note is not None:
        a, b, l = result.sign_note_point
        n = result.sign_note
        rule = "f2(m) - m < 0" if n.rule_predicts_drop else "f2(m) - m >= 0"
        lines.append(
            f"[INFO] second-iterate sign rule at alpha={a!r} beta={b!r} lambda={l!r}: "
            f"rule predicts {rule}; direct evaluation gives "
            f"f2(m) - m = {n.f2_minus_m!r} "
            "(rule direction flipped; direct evaluation is authoritative)"
        )
    if result.endpoint_note is not None:
        e = result.endpoint_note
        lines.append(
            f"[INFO] left-endpoint gap at the same point: f(a) - a = {e.direct!r} "
            f"= (a - m)^2/a = {e.exact_form!r}; sign-only square surrogate = "
            f"{e.square_form!r} (same sign, different magnitude by design)"
        )
    factor_status = "PASS" if result.factor_max_err <= 1e-9 else "FAIL"
    lines.append(
        f"[{factor_status}] third-iterate factored identity: {result.factor_checks} "
        f"triples, max |direct - factored| = {result.factor_max_err!r}"
    )
    oracle_status = "PASS" if (not result.oracle_failures and result.oracle_max_err <= 1e-9) else "FAIL"
    lines.append(
        f"[{oracle_status}] low-period oracle equivalence: {result.oracle_checks} "
        f"triples, max |scan - closed form| = {result.oracle_max_err!r}"
    )
    for msg in result.oracle_failures[:10]:
        lines.append(f"    {msg}")
    lines.append(f"verdict: {'PASS' if result.passed else 'FAIL'}")
    return "\n".join(lines)
