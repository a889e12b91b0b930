"""Burden comparison of the two sanctions and Russia's indifference between them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError
from .fields import StepSupplyCurve
from .market import MarketCalibration
from .policy import Mode, discount_outcome, policy_outcome, quantity_outcome
from .welfare import WORLD_GDP_USD, RussiaScale, russia_scale, world_gdp_share

INDIFFERENCE_TOL = 0.1  # million USD/day
DELTA_CAP = 1.0 - 1e-9


@dataclass(frozen=True)
class BurdenPoint:
    """Importer surplus change and Russian profit change for one policy point.

    Money in million USD/day; ``*_pct_gdp`` are annualized shares of world
    GDP (importers) and Russian GDP (Russia), in percent.
    """

    policy: str
    extent: float
    importer_surplus: float
    importer_surplus_pct_gdp: float
    russia_loss: float
    russia_loss_pct_gdp: float


@dataclass(frozen=True)
class IndifferencePoint:
    alpha: float
    delta: float
    saturated: bool = False


def burden_frontier(
    cal: MarketCalibration,
    curve: StepSupplyCurve,
    grid: Iterable[float],
    policy: str,
    mode: "Mode | str" = Mode.APPROX,
    world_gdp: float = WORLD_GDP_USD,
    russia: RussiaScale = RussiaScale(),
) -> list[BurdenPoint]:
    points = []
    for extent in grid:
        if not 0.0 <= extent < 1.0:
            raise DomainError(f"policy extent must lie in [0, 1), got {extent!r}")
        out = policy_outcome(cal, curve, policy, extent, mode)
        points.append(
            BurdenPoint(
                policy=policy,
                extent=float(extent),
                importer_surplus=out.d_cs,
                importer_surplus_pct_gdp=world_gdp_share(out.d_cs, world_gdp),
                russia_loss=out.d_profit_ru,
                russia_loss_pct_gdp=russia_scale(out.d_profit_ru, russia)[0],
            )
        )
    return points


def equivalent_discount(
    cal: MarketCalibration,
    curve: StepSupplyCurve,
    target: float,
    mode: "Mode | str" = Mode.APPROX,
    tol: float = INDIFFERENCE_TOL,
) -> tuple[float, bool]:
    """Smallest discount whose Russian profit change reaches ``target`` (million USD/day, <= 0).

    Returns ``(delta, saturated)``; ``saturated`` means no discount below 1
    reaches the target and ``delta`` is capped.
    """
    def gap(delta):
        return discount_outcome(cal, curve, delta, mode).d_profit_ru - target

    if target >= 0:
        return 0.0, False
    hi = DELTA_CAP
    g_hi = gap(hi)
    if g_hi > tol:
        return hi, True
    lo, g_lo = 0.0, -target
    # invariant: gap(lo) > 0 >= gap(hi); profit change is nonincreasing in delta
    for _ in range(200):
        if hi - lo <= 1e-13:
            break
        mid = 0.5 * (lo + hi)
        g_mid = gap(mid)
        if g_mid > 0:
            lo, g_lo = mid, g_mid
        else:
            hi, g_hi = mid, g_mid
    return (hi if abs(g_hi) <= abs(g_lo) else lo), False


def indifference_curve(
    cal: MarketCalibration,
    curve: StepSupplyCurve,
    alpha_grid: Iterable[float],
    mode: "Mode | str" = Mode.APPROX,
    tol: float = INDIFFERENCE_TOL,
) -> list[IndifferencePoint]:
    """For each restriction ``alpha``, the discount that costs Russia the same profit."""
    out = []
    for alpha in alpha_grid:
        if not 0.0 <= alpha < 1.0:
            raise DomainError(f"alpha must lie in [0, 1), got {alpha!r}")
        target = quantity_outcome(cal, curve, alpha, mode).d_profit_ru
        delta, saturated = equivalent_discount(cal, curve, target, mode, tol)
        out.append(IndifferencePoint(float(alpha), delta, saturated))
    return out


def equivalent_restriction(
    cal: MarketCalibration,
    curve: StepSupplyCurve,
    delta: float,
    mode: "Mode | str" = Mode.APPROX,
) -> float:
    """Restriction share ``alpha`` that costs Russia as much as a discount ``delta``.

    Returns 1.0 when even a full export stop hurts Russia less.
    """
    target = discount_outcome(cal, curve, delta, mode).d_profit_ru
    if target >= 0:
        return 0.0

    def gap(alpha):
        return quantity_outcome(cal, curve, alpha, mode).d_profit_ru - target

    if gap(1.0) > 0:
        return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if gap(mid) > 0:
            lo = mid
        else:
            hi = mid
    return hi
