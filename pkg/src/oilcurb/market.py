"""Baseline world oil market: constant-elasticity demand and rest-of-world supply.

Units throughout the package: quantities in Mb/d (million barrels per day),
prices in USD/b, money flows in million USD/day.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import CalibrationError, DomainError, ValidationError

DEFAULT_P_STAR = 101.33
DEFAULT_Q_STAR = 99.0
DEFAULT_S_RU_STAR = 7.5


class Horizon(enum.Enum):
    """Time horizon with its default (demand, ROW supply) elasticity pair."""

    SHORT_RUN = "short"
    LONG_RUN = "long"

    @property
    def eps_d(self) -> float:
        return -0.125 if self is Horizon.SHORT_RUN else -0.45

    @property
    def eps_row(self) -> float:
        return 0.0 if self is Horizon.SHORT_RUN else 0.13

    @classmethod
    def parse(cls, value: "str | Horizon") -> "Horizon":
        if isinstance(value, Horizon):
            return value
        key = str(value).strip().lower().replace("-", "_")
        aliases = {
            "short": cls.SHORT_RUN, "short_run": cls.SHORT_RUN, "sr": cls.SHORT_RUN,
            "long": cls.LONG_RUN, "long_run": cls.LONG_RUN, "lr": cls.LONG_RUN,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValidationError(f"unknown horizon {value!r} (expected 'short' or 'long')") from None


@dataclass(frozen=True)
class MarketCalibration:
    """Calibrated baseline equilibrium.

    ``b_d`` and ``b_row`` are the power-law constants chosen so that demand and
    ROW supply pass exactly through the baseline point ``(p_star, q_star)`` and
    ``(p_star, s_row_star)``.
    """

    p_star: float
    q_star: float
    s_ru_star: float
    s_row_star: float
    y: float
    eps_d: float
    eps_row: float
    b_d: float
    b_row: float
    horizon: Horizon = Horizon.SHORT_RUN

    def demand(self, p: float) -> float:
        return demand(self, p)

    def row_supply(self, p: float) -> float:
        return row_supply(self, p)


def calibrate(
    p_star: float = DEFAULT_P_STAR,
    q_star: float = DEFAULT_Q_STAR,
    s_ru_star: float = DEFAULT_S_RU_STAR,
    horizon: "Horizon | str" = Horizon.SHORT_RUN,
    eps_d: float | None = None,
    eps_row: float | None = None,
) -> MarketCalibration:
    """Calibrate demand and ROW-supply constants to a baseline equilibrium.

    Elasticities default to the horizon preset; pass ``eps_d``/``eps_row`` to
    override them.
    """
    horizon = Horizon.parse(horizon)
    for name, value in (("p_star", p_star), ("q_star", q_star), ("s_ru_star", s_ru_star)):
        if not math.isfinite(value) or value <= 0:
            raise ValidationError(f"{name} must be positive and finite, got {value!r}")
    if s_ru_star >= q_star:
        raise ValidationError(f"s_ru_star ({s_ru_star}) must be below q_star ({q_star})")

    eps_d = horizon.eps_d if eps_d is None else float(eps_d)
    eps_row = horizon.eps_row if eps_row is None else float(eps_row)
    if not eps_d < 0:
        raise CalibrationError(f"demand elasticity must be negative, got {eps_d}")
    if eps_d == -1:
        raise CalibrationError("demand elasticity of exactly -1 makes the surplus integral logarithmic")
    if eps_row < 0:
        raise CalibrationError(f"ROW supply elasticity must be nonnegative, got {eps_row}")

    s_row_star = q_star - s_ru_star
    return MarketCalibration(
        p_star=float(p_star),
        q_star=float(q_star),
        s_ru_star=float(s_ru_star),
        s_row_star=s_row_star,
        y=s_ru_star / q_star,
        eps_d=eps_d,
        eps_row=eps_row,
        b_d=q_star / p_star**eps_d,
        b_row=s_row_star / p_star**eps_row,
        horizon=horizon,
    )


def _check_price(p: float) -> None:
    if not p > 0:
        raise DomainError(f"price must be positive, got {p!r}")


def demand(cal: MarketCalibration, p: float) -> float:
    """World oil demand ``b_d * p**eps_d`` in Mb/d."""
    _check_price(p)
    return cal.b_d * p**cal.eps_d


def row_supply(cal: MarketCalibration, p: float) -> float:
    """Rest-of-world supply ``b_row * p**eps_row`` in Mb/d (includes Russian domestic supply)."""
    _check_price(p)
    if cal.eps_row == 0:
        return cal.s_row_star
    return cal.b_row * p**cal.eps_row
