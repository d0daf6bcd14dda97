"""chaoslab: chaos classification for a tatonnement price-adjustment map.

The package decides whether the price process
f(p) = p + lam*(2*beta/p - 4*(1-alpha)) is topologically chaotic on its
trapping interval, twice over: by closed-form lambda thresholds and by
direct numerical evaluation of the unimodal-map criterion, with orbit
certificates and batch parameter sweeps on top.
"""

__version__ = "0.1.0"

from .economy import (
    EPS_CMP,
    EPS_ROOT,
    ConsistencyError,
    DomainError,
    EconomyParams,
    ThresholdSet,
    TrappingInterval,
    WindowError,
    critical_point,
    excess_demand,
    price_map,
    price_map_derivative,
    step,
    thresholds,
    trapping_interval,
)
from .gate import (
    ChaosVerdict,
    EndpointGapReport,
    GateReport,
    Method,
    PiSet,
    SecondIterateSignReport,
    ThirdIterateFactorReport,
    classify_closed_form,
    classify_numerical,
    endpoint_gap_report,
    fixed_point,
    gate_check,
    period2_points,
    pi_set,
    second_iterate_sign_report,
    third_iterate_factor_report,
)
from .orbits import (
    GRID_BASE,
    MAX_STEPS,
    OVERFLOW_GUARD,
    PERIOD3_SCAN_POINTS,
    Orbit,
    PeriodicOrbit,
    TurbulenceWitness,
    find_odd_cycle,
    find_periodic_orbits,
    find_turbulence_witness,
    iterate,
    search_period3,
)
from .sweep import (
    CSV_COLUMNS,
    LambdaSpec,
    SweepConfig,
    SweepRow,
    evaluate_cell,
    lambda_values,
    run_sweep,
    write_rows_csv,
    write_rows_json,
)
from .verify import VerifyResult, format_report, run_verify

__all__ = [
    "__version__",
    "EPS_CMP",
    "EPS_ROOT",
    "ConsistencyError",
    "DomainError",
    "EconomyParams",
    "ThresholdSet",
    "TrappingInterval",
    "WindowError",
    "critical_point",
    "excess_demand",
    "price_map",
    "price_map_derivative",
    "step",
    "thresholds",
    "trapping_interval",
    "ChaosVerdict",
    "EndpointGapReport",
    "GateReport",
    "Method",
    "PiSet",
    "SecondIterateSignReport",
    "ThirdIterateFactorReport",
    "classify_closed_form",
    "classify_numerical",
    "endpoint_gap_report",
    "fixed_point",
    "gate_check",
    "period2_points",
    "pi_set",
    "second_iterate_sign_report",
    "third_iterate_factor_report",
    "GRID_BASE",
    "MAX_STEPS",
    "OVERFLOW_GUARD",
    "PERIOD3_SCAN_POINTS",
    "Orbit",
    "PeriodicOrbit",
    "TurbulenceWitness",
    "find_odd_cycle",
    "find_periodic_orbits",
    "find_turbulence_witness",
    "iterate",
    "search_period3",
    "CSV_COLUMNS",
    "LambdaSpec",
    "SweepConfig",
    "SweepRow",
    "evaluate_cell",
    "lambda_values",
    "run_sweep",
    "write_rows_csv",
    "write_rows_json",
    "VerifyResult",
    "format_report",
    "run_verify",
]
