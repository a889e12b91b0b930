"""Equilibrium effects of an export-quantity restriction and a forced price discount.

Two solution modes are available for every policy:

``Mode.APPROX``
    The analytical approximations: exponential price response to a quantity
    restriction, and for the discount a relation that linearizes demand and
    ROW supply around the baseline while keeping Russian supply on its exact
    step curve.
``Mode.EXACT``
    Full market clearing with the power-law demand and ROW supply curves.

At a step of the Russian supply curve the marginal field is rationed
fractionally, so an equilibrium always exists and clears exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from typing import Callable

from scipy.optimize import brentq

from .errors import DomainError, SolverError, ValidationError
from .fields import StepSupplyCurve
from .market import MarketCalibration, demand, row_supply
from .welfare import cs_change_discount, cs_change_quantity

DAMPING = 0.5
MAX_ITERATIONS = 10_000
FIXED_POINT_TOL = 1e-9
PRICE_RTOL = 1e-10
# relative width at which a bracket is treated as collapsed onto a supply step
BRACKET_RTOL = 1e-13


class Mode(enum.Enum):
    APPROX = "approx"
    EXACT = "exact"

    @classmethod
    def parse(cls, value: "str | Mode") -> "Mode":
        if isinstance(value, Mode):
            return value
        key = str(value).strip().lower().replace("-", "_")
        aliases = {"approx": cls.APPROX, "approximate": cls.APPROX,
                   "exact": cls.EXACT, "exact_equilibrium": cls.EXACT, "exactequilibrium": cls.EXACT}
        try:
            return aliases[key]
        except KeyError:
            raise ValidationError(f"unknown mode {value!r} (expected 'approx' or 'exact')") from None


@dataclass(frozen=True)
class PolicyOutcome:
    """Effects of one policy point relative to the baseline.

    Prices in USD/b, quantities in Mb/d, profit and surplus in million USD/day.
    ``policy`` is ``"quantity"`` (extent = alpha) or ``"discount"`` (extent = delta).
    """

    policy: str
    extent: float
    mode: Mode
    delta_p: float
    p_world: float
    p_russia: float
    p_weighted: float
    ds_ru: float
    ds_row: float
    dq: float
    d_profit_ru: float
    d_cs: float

    def as_dict(self) -> dict:
        d = asdict(self)
        d["mode"] = self.mode.value
        return d


def xi(cal: MarketCalibration) -> float:
    """Semi-elasticity of the world price with respect to the restricted share."""
    denom = (1.0 - cal.y) * cal.eps_row - cal.eps_d
    if not denom > 0:
        raise DomainError(f"degenerate elasticities: (1-y)*eps_row - eps_d = {denom} must be positive")
    return cal.y / denom


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"restriction share alpha must lie in [0, 1], got {alpha!r}")


def _check_delta(delta: float) -> None:
    if not 0.0 <= delta < 1.0:
        raise DomainError(f"discount delta must lie in [0, 1), got {delta!r}")


def _check_curve(cal: MarketCalibration, curve: StepSupplyCurve) -> None:
    if abs(curve.total_capacity - cal.s_ru_star) > 1e-9 * cal.s_ru_star:
        raise ValidationError(
            f"curve capacity {curve.total_capacity!r} does not match baseline Russian exports {cal.s_ru_star!r}"
        )


def _expand_bracket(residual: Callable[[float], float], lo: float, what: str) -> float:
    hi = 10.0 * lo
    for _ in range(60):
        if residual(hi) <= 0:
            return hi
        hi *= 2.0
    raise SolverError(f"{what}: no sign change of the market residual on [{lo}, {hi}]")


def quantity_price_change(cal: MarketCalibration, alpha: float, mode: "Mode | str" = Mode.APPROX) -> float:
    """World price change (USD/b) after Russian exports are cut to ``(1 - alpha)`` of baseline."""
    _check_alpha(alpha)
    mode = Mode.parse(mode)
    if alpha == 0:
        return 0.0
    if mode is Mode.APPROX:
        return cal.p_star * math.expm1(xi(cal) * alpha)

    s_ru = (1.0 - alpha) * cal.s_ru_star

    def residual(p):
        return demand(cal, p) - row_supply(cal, p) - s_ru

    hi = _expand_bracket(residual, cal.p_star, f"quantity restriction alpha={alpha}")
    try:
        p = brentq(residual, cal.p_star, hi, xtol=1e-12, rtol=PRICE_RTOL * 1e-3, maxiter=500)
    except (RuntimeError, ValueError) as exc:
        raise SolverError(f"quantity restriction alpha={alpha}: bracket [{cal.p_star}, {hi}] failed: {exc}") from exc
    return p - cal.p_star


def _weighted_price(q_total: float, s_ru: float, p_world: float, p_russia: float) -> float:
    return ((q_total - s_ru) * p_world + s_ru * p_russia) / q_total


def quantity_outcome(
    cal: MarketCalibration,
    curve: StepSupplyCurve,
    alpha: float,
    mode: "Mode | str" = Mode.APPROX,
) -> PolicyOutcome:
    mode = Mode.parse(mode)
    _check_curve(cal, curve)
    dp = quantity_price_change(cal, alpha, mode)
    s_star = cal.s_ru_star
    p_world = cal.p_star + dp
    ds_ru = -alpha * s_star
    ds_row = row_supply(cal, p_world) - cal.s_row_star
    d_profit = ((1.0 - alpha) * dp - alpha * cal.p_star) * s_star + curve.cost_integral((1.0 - alpha) * s_star, s_star)
    return PolicyOutcome(
        policy="quantity",
        extent=float(alpha),
        mode=mode,
        delta_p=dp,
        p_world=p_world,
        p_russia=p_world,
        p_weighted=p_world,
        ds_ru=ds_ru,
        ds_row=ds_row,
        dq=ds_ru + ds_row,
        d_profit_ru=d_profit,
        d_cs=cs_change_quantity(cal, dp),
    )


def _step_crossing(curve: StepSupplyCurve, pr_lo: float, pr_hi: float) -> int | None:
    steps = curve.steps_in_price_range(pr_lo, pr_hi)
    return int(steps[0]) if steps.size else None


def _ration(curve: StepSupplyCurve, k: int, wanted: float) -> float:
    """Clip ``wanted`` Russian supply into the range step ``k`` can deliver at its own cost."""
    return min(max(wanted, curve.capacity_before_step(k)), float(curve.cumulative_capacity[k]))


def _discount_approx(cal: MarketCalibration, curve: StepSupplyCurve, delta: float) -> tuple[float, float]:
    s_star, p_star = cal.s_ru_star, cal.p_star
    scale = xi(cal) * p_star

    def supply(dp):
        return curve.quantity_at_price((1.0 - delta) * (p_star + dp))

    if scale == 0:
        return 0.0, supply(0.0) - s_star

    # h(dp) = dp - f(dp) is nondecreasing; f is the fixed-point map
    def h(dp):
        return dp + scale * (supply(dp) - s_star) / s_star

    lo, hi = 0.0, scale
    x = 0.0
    for _ in range(MAX_ITERATIONS):
        r = h(x)
        if abs(r) < FIXED_POINT_TOL:
            return x, supply(x) - s_star
        if r < 0:
            lo = x
        else:
            hi = x
        if hi - lo <= BRACKET_RTOL * max(1.0, hi):
            break
        x_next = x - DAMPING * r
        # keep the damped step inside the bracket; a step-valued map can make it oscillate
        x = x_next if lo < x_next < hi else 0.5 * (lo + hi)
    else:
        raise SolverError(f"discount delta={delta}: fixed point did not converge in {MAX_ITERATIONS} iterations")

    # bracket collapsed onto a jump of the supply curve: the marginal field is rationed
    k = _step_crossing(curve, (1.0 - delta) * (p_star + lo), (1.0 - delta) * (p_star + hi))
    if k is None:
        return hi, supply(hi) - s_star
    dp = float(curve.marginal_costs[k]) / (1.0 - delta) - p_star
    s_ru = _ration(curve, k, s_star * (1.0 - dp / scale))
    return dp, s_ru - s_star


def _discount_exact(cal: MarketCalibration, curve: StepSupplyCurve, delta: float) -> tuple[float, float]:
    def supply(p):
        return curve.quantity_at_price((1.0 - delta) * p)

    def residual(p):
        return demand(cal, p) - row_supply(cal, p) - supply(p)

    lo = cal.p_star
    r_lo = residual(lo)
    if r_lo <= 0:
        return 0.0, supply(lo) - cal.s_ru_star
    hi = _expand_bracket(residual, lo, f"discount delta={delta}")
    r_hi = residual(hi)
    for _ in range(MAX_ITERATIONS):
        if hi - lo <= BRACKET_RTOL * hi:
            break
        mid = 0.5 * (lo + hi)
        r_mid = residual(mid)
        if r_mid > 0:
            lo, r_lo = mid, r_mid
        else:
            hi, r_hi = mid, r_mid
    else:
        raise SolverError(f"discount delta={delta}: bisection did not converge")

    k = _step_crossing(curve, (1.0 - delta) * lo, (1.0 - delta) * hi)
    if k is not None:
        p = float(curve.marginal_costs[k]) / (1.0 - delta)
        s_ru = _ration(curve, k, demand(cal, p) - row_supply(cal, p))
    else:
        # smooth segment: one secant step inside the collapsed bracket
        p = lo + r_lo / (r_lo - r_hi) * (hi - lo) if r_lo != r_hi else hi
        s_ru = supply(p)
    return p - cal.p_star, s_ru - cal.s_ru_star


def discount_price_change(
    cal: MarketCalibration,
    curve: StepSupplyCurve,
    delta: float,
    mode: "Mode | str" = Mode.APPROX,
) -> tuple[float, float]:
    """World price change (USD/b) and change in Russian exports (Mb/d) under a discount ``delta``."""
    _check_delta(delta)
    mode = Mode.parse(mode)
    _check_curve(cal, curve)
    if mode is Mode.APPROX:
        dp, ds = _discount_approx(cal, curve, delta)
    else:
        dp, ds = _discount_exact(cal, curve, delta)
    # round-off guard; both are nonnegative/nonpositive by construction
    return max(dp, 0.0), min(ds, 0.0)


def discount_outcome(
    cal: MarketCalibration,
    curve: StepSupplyCurve,
    delta: float,
    mode: "Mode | str" = Mode.APPROX,
) -> PolicyOutcome:
    mode = Mode.parse(mode)
    dp, ds_ru = discount_price_change(cal, curve, delta, mode)
    s_star, p_star = cal.s_ru_star, cal.p_star
    p_world = p_star + dp
    p_russia = (1.0 - delta) * p_world
    s_after = s_star + ds_ru
    d_profit = (
        ((1.0 - delta) * dp - delta * p_star) * s_star
        + (1.0 - delta) * p_world * ds_ru
        + curve.cost_integral(s_after, s_star)
    )
    ds_row = row_supply(cal, p_world) - cal.s_row_star
    dq = ds_ru + ds_row
    return PolicyOutcome(
        policy="discount",
        extent=float(delta),
        mode=mode,
        delta_p=dp,
        p_world=p_world,
        p_russia=p_russia,
        p_weighted=_weighted_price(cal.q_star + dq, s_after, p_world, p_russia),
        ds_ru=ds_ru,
        ds_row=ds_row,
        dq=dq,
        d_profit_ru=d_profit,
        d_cs=cs_change_discount(cal, delta, dp, s_after),
    )


def policy_outcome(
    cal: MarketCalibration,
    curve: StepSupplyCurve,
    policy: str,
    extent: float,
    mode: "Mode | str" = Mode.APPROX,
) -> PolicyOutcome:
    if policy == "quantity":
        return quantity_outcome(cal, curve, extent, mode)
    if policy == "discount":
        return discount_outcome(cal, curve, extent, mode)
    raise ValidationError(f"unknown policy {policy!r} (expected 'quantity' or 'discount')")


def implied_tail_mean_cost(cal: MarketCalibration, alpha: float, loss: float) -> float:
    """Mean marginal cost of the costliest ``alpha`` share of Russian supply implied by a reported loss.

    Inverts the approximate profit change of a quantity restriction: given a
    loss ``loss`` (million USD/day, positive number) at restriction ``alpha``,
    returns the average cost of the barrels taken off the market.
    """
    _check_alpha(alpha)
    if alpha == 0:
        raise DomainError("alpha must be positive")
    dp = quantity_price_change(cal, alpha, Mode.APPROX)
    revenue_change = ((1.0 - alpha) * dp - alpha * cal.p_star) * cal.s_ru_star
    return (-loss - revenue_change) / (alpha * cal.s_ru_star)
