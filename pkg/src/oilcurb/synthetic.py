"""Synthetic Russian field data calibrated to aggregate cost targets.

Field-level cost data for Russia is proprietary. This module produces a
stand-in field set: random field sizes and idiosyncratic cost noise on top of
a smooth convex cost ladder ``a + b*u + c*u**k (+ d*u**m)`` over the
cumulative capacity position ``u`` in [0, 1]. The ladder parameters are then
fitted by least squares so that the realized step curves hit the targets:

* the highest marginal cost in each horizon, and
* the mean marginal cost of the costliest share ``f`` of capacity, for a few
  shares ``f``.

Default targets follow from the published aggregates. For a restriction
``alpha`` with reported loss ``L``, the tail integral over the top
``alpha * S`` of the curve is ``-L - ((1-alpha)*dp - alpha*p*) * S``; see
:func:`oilcurb.policy.implied_tail_mean_cost`. The maxima (25 and 55 USD/b)
put the onset of supply losses at discounts of about 75% and 45%. The
short-run top-2% mean of 19 USD/b puts enough capacity just below the maximum
for consumer surplus to peak before an 80% discount.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .errors import CalibrationError
from .fields import FieldRecord, StepSupplyCurve, build_curve
from .market import Horizon


@dataclass(frozen=True)
class SyntheticSpec:
    total_capacity: float = 7.5
    n_fields: int = 1000
    # lognormal sigma of relative field sizes
    capacity_sigma: float = 0.6
    # lognormal sigma of per-field cost noise around the ladder
    opex_noise: float = 0.0
    capex_noise: float = 0.08
    short_run_max_cost: float = 25.0
    long_run_max_cost: float = 55.0
    # (capacity share, mean marginal cost of that costliest share)
    short_run_tail_means: tuple[tuple[float, float], ...] = ((0.02, 19.0), (0.2, 11.10), (0.3, 10.19), (0.5, 8.93))
    long_run_tail_means: tuple[tuple[float, float], ...] = ((0.2, 23.75), (0.3, 21.49), (0.5, 18.64))
    max_iterations: int = 200


def tail_mean_cost(curve: StepSupplyCurve, share: float) -> float:
    """Mean marginal cost over the costliest ``share`` of the curve's capacity."""
    total = curve.total_capacity
    return curve.cost_integral(total * (1.0 - share), total) / (share * total)


def _check_targets(max_cost: float, tails, label: str) -> None:
    if not max_cost > 0:
        raise CalibrationError(f"{label}: maximum cost must be positive")
    prev_share, prev_mean = 0.0, max_cost
    for share, mean in sorted(tails):
        if not 0 < share <= 1:
            raise CalibrationError(f"{label}: tail share {share} outside (0, 1]")
        if share == prev_share:
            raise CalibrationError(f"{label}: duplicate tail share {share}")
        if not 0 < mean < max_cost:
            raise CalibrationError(f"{label}: tail mean {mean} must lie in (0, max cost {max_cost})")
        # a nondecreasing cost curve cannot have a wider tail with a higher mean
        if mean > prev_mean:
            raise CalibrationError(
                f"{label}: mean {mean} over top {share:.0%} exceeds mean {prev_mean} over a narrower tail"
            )
        prev_share, prev_mean = share, mean


def _ladder(params: np.ndarray, u: np.ndarray) -> np.ndarray:
    a, b, c, log_k = params[:4]
    k = math.exp(log_k)
    out = a + b * u + c * u**k
    if len(params) == 6:
        # second, steeper power term; its exponent is a multiple of k
        d, log_ratio = params[4:]
        out = out + d * u ** (k * math.exp(log_ratio))
    return out


def _curve_from_costs(caps: np.ndarray, costs: np.ndarray) -> StepSupplyCurve:
    order = np.argsort(costs, kind="stable")
    mc = costs[order]
    cum = np.cumsum(caps[order])
    # merge exact ties so step costs stay strictly increasing
    keep = np.append(np.diff(mc) > 0, True)
    return StepSupplyCurve(mc[keep], cum[keep])


def _residuals(curve: StepSupplyCurve, max_cost: float, tails) -> np.ndarray:
    res = [(curve.max_cost - max_cost) / max_cost]
    res += [(tail_mean_cost(curve, share) - mean) / mean for share, mean in tails]
    return np.array(res)


def _fit(make_costs, caps, max_cost, tails, x0, max_iterations, label):
    def fun(x):
        return _residuals(_curve_from_costs(caps, make_costs(x)), max_cost, tails)

    lower = np.array([0.0, 0.0, 0.0, math.log(1.0), 0.0, math.log(2.0)][: len(x0)])
    upper = np.array([max_cost, max_cost, max_cost, math.log(500.0), max_cost, math.log(100.0)][: len(x0)])
    best = None
    for start in _starts(x0):
        start = np.clip(start, lower + 1e-9, upper - 1e-9)
        sol = least_squares(fun, start, bounds=(lower, upper), max_nfev=max_iterations, xtol=1e-14, ftol=1e-14)
        worst = float(np.max(np.abs(sol.fun)))
        if best is None or worst < best[0]:
            best = (worst, sol.x)
        if worst < 1e-7:
            break
    if best[0] > 1e-6:
        raise CalibrationError(f"{label}: could not meet cost targets (worst relative miss {best[0]:.3g})")
    return best[1]


def _starts(x0: np.ndarray):
    """The given start, then variants with other exponents (the fit has local minima)."""
    yield x0
    for log_k in np.log([5.0, 40.0, 10.0, 80.0, 2.0]):
        if len(x0) == 4:
            yield np.array([*x0[:3], log_k])
        else:
            for log_ratio in np.log([3.0, 10.0, 30.0]):
                yield np.array([*x0[:3], log_k, x0[4], log_ratio])


def _initial_guess(max_cost: float, tails) -> np.ndarray:
    widest_mean = min(m for _, m in tails)
    a = 0.15 * widest_mean
    b = widest_mean - a
    c = max(max_cost - a - b, 0.0)
    if len(tails) < 4:
        return np.array([a, b, c, math.log(20.0)])
    # split the top between a moderate and a steep power term
    return np.array([a, b, 0.3 * c, math.log(10.0), 0.7 * c, math.log(10.0)])


@functools.lru_cache(maxsize=32)
def _generate(spec: SyntheticSpec, seed: int) -> tuple[FieldRecord, ...]:
    if spec.n_fields < 1:
        raise CalibrationError("need at least one field")
    if not spec.total_capacity > 0:
        raise CalibrationError("total capacity must be positive")
    _check_targets(spec.short_run_max_cost, spec.short_run_tail_means, "short run")
    _check_targets(spec.long_run_max_cost, spec.long_run_tail_means, "long run")
    if spec.long_run_max_cost < spec.short_run_max_cost:
        raise CalibrationError("long-run maximum cost cannot be below the short-run maximum")

    rng = np.random.default_rng(seed)
    # largest fields are cheapest; small marginal fields fill the costly end of the ladder
    weights = np.sort(rng.lognormal(0.0, spec.capacity_sigma, spec.n_fields))[::-1]
    caps = spec.total_capacity * weights / weights.sum()
    caps[0] += spec.total_capacity - math.fsum(caps)
    # ladder position: upper end of each field's slice of cumulative capacity
    u = np.cumsum(caps) / spec.total_capacity
    opex_noise = rng.lognormal(0.0, spec.opex_noise, spec.n_fields)
    capex_noise = rng.lognormal(0.0, spec.capex_noise, spec.n_fields)

    opex_params = _fit(
        lambda x: _ladder(x, u) * opex_noise,
        caps,
        spec.short_run_max_cost,
        spec.short_run_tail_means,
        _initial_guess(spec.short_run_max_cost, spec.short_run_tail_means),
        spec.max_iterations,
        "short run",
    )
    # the fit meets the maximum to ~1e-10; clamp so no field sits above it
    opex = np.minimum(_ladder(opex_params, u) * opex_noise, spec.short_run_max_cost)

    capex_guess = _initial_guess(spec.long_run_max_cost - spec.short_run_max_cost, spec.long_run_tail_means)
    capex_params = _fit(
        lambda x: opex + _ladder(x, u) * capex_noise,
        caps,
        spec.long_run_max_cost,
        spec.long_run_tail_means,
        capex_guess,
        spec.max_iterations,
        "long run",
    )
    capex = np.minimum(_ladder(capex_params, u) * capex_noise, spec.long_run_max_cost - opex)

    order = rng.permutation(spec.n_fields)
    width = len(str(spec.n_fields))
    return tuple(
        FieldRecord(f"F{i + 1:0{width}d}", float(caps[j]), float(opex[j]), float(capex[j]))
        for i, j in enumerate(order)
    )


def generate_synthetic_fields(spec: SyntheticSpec | None = None, seed: int = 0) -> list[FieldRecord]:
    """Generate a calibrated synthetic field list; deterministic for a given ``seed``."""
    return list(_generate(spec or SyntheticSpec(), int(seed)))


def default_curve(horizon: "Horizon | str", seed: int = 0) -> StepSupplyCurve:
    """Step supply curve from the default synthetic field set."""
    return build_curve(_generate(SyntheticSpec(), int(seed)), horizon)
