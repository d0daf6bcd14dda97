"""Price-adjustment map of a two-consumer, two-good exchange economy.

A single relative price p > 0 adjusts in discrete time proportionally to
excess demand:

    f(p) = p + lam * z(p),        z(p) = 2*beta/p - 4*(1 - alpha),

where alpha, beta in (0, 1) are the consumers' demand exponents and
lam > 0 is the adjustment speed.  The map is strictly convex on (0, inf)
(f''(p) = 4*lam*beta/p**3 > 0) and takes its minimum at
m = sqrt(2*lam*beta), so it is unimodal: strictly decreasing left of m,
strictly increasing right of m.

Restricted to E = [f(m), f(f(m)) + m] the map sends E into itself exactly
when lam lies strictly inside the window

    lambda_g_low < lam < lambda_max,
    lambda_g_low = beta / (8*(1-alpha)**2),
    lambda_max   = beta / (2*(1-alpha)**2),

and E is then the domain on which all classification in this package
operates.  Two interior thresholds subdivide the window:

    lambda_pi    = 9*beta / (32*(1-alpha)**2)   -- above it, the period <= 2
                   points confined to the decreasing branch collapse to the
                   fixed point alone;
    lambda_chaos = 25*beta / (72*(1-alpha)**2)  -- onset of odd-period
                   cycles (strictly above) and of a turbulent second
                   iterate (at or above).

All operations are pure functions of immutable inputs and are safe to call
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

#: absolute tolerance for comparisons against analytic thresholds
EPS_CMP = 1e-12
#: residual tolerance for accepting a numeric root as a certificate
EPS_ROOT = 1e-10


class DomainError(ValueError):
    """A price argument lies outside (0, inf)."""


class WindowError(ValueError):
    """Adjustment speed outside the open window (lambda_g_low, lambda_max).

    Attributes:
        bound: name of the violated bound, "lambda_g_low" or "lambda_max".
        bound_value: numeric value of that bound.
    """

    def __init__(self, message: str, *, bound: str, bound_value: float):
        super().__init__(message)
        self.bound = bound
        self.bound_value = bound_value


class ConsistencyError(RuntimeError):
    """Two routes to the same quantity disagree beyond tolerance."""


@dataclass(frozen=True)
class EconomyParams:
    """Demand exponents and adjustment speed defining the price map.

    alpha and beta must lie strictly in (0, 1); lam must be positive.
    Construction rejects anything else (including NaN).
    """

    alpha: float
    beta: float
    lam: float

    def __post_init__(self):
        # normalize numpy scalars and ints so verdict booleans stay native
        for name in ("alpha", "beta", "lam"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie strictly in (0, 1), got {self.alpha!r}")
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must lie strictly in (0, 1), got {self.beta!r}")
        if not self.lam > 0.0 or math.isinf(self.lam):
            raise ValueError(f"lam must be a positive finite real, got {self.lam!r}")


@dataclass(frozen=True)
class ThresholdSet:
    """The four lambda thresholds of the classification, in increasing order."""

    lambda_g_low: float
    lambda_pi: float
    lambda_chaos: float
    lambda_max: float

    def __post_init__(self):
        # coefficients 1/8 < 9/32 < 25/72 < 1/2 force this for every valid economy
        if not (self.lambda_g_low < self.lambda_pi < self.lambda_chaos < self.lambda_max):
            raise ValueError(
                "threshold ordering violated: expected "
                f"{self.lambda_g_low!r} < {self.lambda_pi!r} < "
                f"{self.lambda_chaos!r} < {self.lambda_max!r}"
            )


@dataclass(frozen=True)
class TrappingInterval:
    """The invariant interval E = [a, b] with the interior critical point m."""

    a: float
    m: float
    b: float

    def __post_init__(self):
        if not (self.a < self.m < self.b):
            raise ValueError(
                f"degenerate interval: need a < m < b, got a={self.a!r} m={self.m!r} b={self.b!r}"
            )


def excess_demand(params: EconomyParams, p: float) -> float:
    """Excess demand z(p) = 2*beta/p - 4*(1 - alpha) at price p > 0."""
    if not p > 0.0:
        raise DomainError(f"price must be positive, got {p!r}")
    return 2.0 * params.beta / p - 4.0 * (1.0 - params.alpha)


def step(params: EconomyParams, p: float) -> float:
    """One adjustment step f(p) = p + lam * z(p).

    The result may be non-positive when lam is large; the caller decides
    whether that is an error (orbit recording treats it as escape).
    """
    return p + params.lam * excess_demand(params, p)


def critical_point(params: EconomyParams) -> float:
    """The minimizer m = sqrt(2*lam*beta) of the (strictly convex) map."""
    return math.sqrt(2.0 * params.lam * params.beta)


def thresholds(params: EconomyParams) -> ThresholdSet:
    """The four lambda thresholds, computed exactly as written (no rearrangement)."""
    denom = (1.0 - params.alpha) ** 2
    return ThresholdSet(
        lambda_g_low=params.beta / (8.0 * denom),
        lambda_pi=9.0 * params.beta / (32.0 * denom),
        lambda_chaos=25.0 * params.beta / (72.0 * denom),
        lambda_max=params.beta / (2.0 * denom),
    )


def trapping_interval(params: EconomyParams) -> TrappingInterval:
    """Build E = [f(m), f(f(m)) + m] around the critical point m.

    Refuses (rather than clamps) when lam is at or outside the window
    bounds, since the interval degenerates there: f(m) = m at the lower
    bound, f(m) = 0 at the upper.  The error names the violated bound.
    """
    th = thresholds(params)
    if params.lam <= th.lambda_g_low:
        raise WindowError(
            f"lambda <= lambda_g_low = {th.lambda_g_low!r} (got lambda = {params.lam!r})",
            bound="lambda_g_low",
            bound_value=th.lambda_g_low,
        )
    if params.lam >= th.lambda_max:
        raise WindowError(
            f"lambda >= lambda_max = {th.lambda_max!r} (got lambda = {params.lam!r})",
            bound="lambda_max",
            bound_value=th.lambda_max,
        )
    m = critical_point(params)
    a = step(params, m)
    b = step(params, a) + m
    return TrappingInterval(a=a, m=m, b=b)


def price_map(params: EconomyParams) -> Callable:
    """The map f as a bare callable, valid for scalars and numpy arrays.

    No positivity check is performed; intended for grid evaluation on
    intervals already known to be positive.
    """
    two_beta = 2.0 * params.beta
    c = 4.0 * (1.0 - params.alpha)
    lam = params.lam

    def f(p):
        return p + lam * (two_beta / p - c)

    return f


def price_map_derivative(params: EconomyParams) -> Callable:
    """f'(p) = 1 - 2*lam*beta/p**2, for scalars and numpy arrays."""
    two_lam_beta = 2.0 * params.lam * params.beta

    def df(p):
        return 1.0 - two_lam_beta / (p * p)

    return df
