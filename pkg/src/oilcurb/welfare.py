"""Oil consumers' surplus changes and their normalization to GDP scales."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, TextIO

from .errors import CalibrationError, DomainError, ValidationError
from .market import MarketCalibration

DAYS_PER_YEAR = 365
REGION_COLUMNS = ("region", "gdp_usd", "oil_consumption_mbd")

# 2021 world totals matching the bundled region file (BP consumption, World Bank GDP)
WORLD_OIL_CONSUMPTION_MBD = 94.09
WORLD_GDP_USD = 96.53e12


@dataclass(frozen=True)
class RegionProfile:
    name: str
    gdp: float  # USD/year
    oil_consumption: float  # Mb/d

    def __post_init__(self):
        if not (math.isfinite(self.gdp) and self.gdp > 0):
            raise ValidationError(f"region {self.name!r}: GDP must be positive")
        if not (math.isfinite(self.oil_consumption) and self.oil_consumption > 0):
            raise ValidationError(f"region {self.name!r}: oil consumption must be positive")


@dataclass(frozen=True)
class RussiaScale:
    """Russian pre-war GDP and military spending, USD/year."""

    gdp_ru: float = 1.787e12
    military_spend: float = 65.3e9

    def __post_init__(self):
        if not (self.gdp_ru > 0 and self.military_spend > 0):
            raise ValidationError("Russian GDP and military spending must be positive")


def cs_change_quantity(cal: MarketCalibration, delta_p: float) -> float:
    """Change in consumer surplus (million USD/day) when the world price moves by ``delta_p``.

    Closed-form integral of the constant-elasticity demand curve between the
    baseline and the new price.
    """
    p1 = cal.p_star + delta_p
    if not p1 > 0:
        raise DomainError(f"new price {p1!r} must be positive")
    if delta_p == 0:
        return 0.0
    e1 = cal.eps_d + 1.0
    if e1 == 0:
        raise CalibrationError("demand elasticity of -1 is not supported")
    # p1**e1 - p0**e1 written as p0**e1 * expm1(e1 * log1p(dp/p0)) to avoid cancellation
    ratio = math.expm1(e1 * math.log1p(delta_p / cal.p_star))
    return -cal.b_d / e1 * cal.p_star**e1 * ratio


def cs_change_discount(cal: MarketCalibration, delta: float, delta_p: float, s_ru_after: float) -> float:
    """Consumer-surplus change under a price discount.

    The world-price effect plus the rebate on discounted Russian oil, which is
    assumed to be shared by all buyers.
    """
    if s_ru_after < 0:
        raise DomainError(f"Russian supply after the sanction must be nonnegative, got {s_ru_after!r}")
    if delta == 0:
        return cs_change_quantity(cal, delta_p)
    return cs_change_quantity(cal, delta_p) + delta * s_ru_after * (cal.p_star + delta_p)


def regional_breakdown(
    global_cs: float,
    regions: Iterable[RegionProfile],
    world_consumption: float = WORLD_OIL_CONSUMPTION_MBD,
) -> list[tuple[str, float]]:
    """Apportion a global surplus change by oil consumption; returns ``(name, % of GDP per year)``."""
    if not world_consumption > 0:
        raise DomainError("world oil consumption must be positive")
    out = []
    for r in regions:
        if r.oil_consumption > world_consumption * (1 + 1e-12):
            raise DomainError(f"region {r.name!r} consumes more oil than the world total")
        share = regional_cs(global_cs, r, world_consumption)
        out.append((r.name, 100.0 * share * 1e6 * DAYS_PER_YEAR / r.gdp))
    return out


def regional_cs(global_cs: float, region: RegionProfile, world_consumption: float = WORLD_OIL_CONSUMPTION_MBD) -> float:
    """Region's part of ``global_cs`` in million USD/day."""
    return global_cs * (region.oil_consumption / world_consumption)


def russia_scale(d_profit: float, scale: RussiaScale = RussiaScale()) -> tuple[float, float]:
    """Profit change as (% of Russian GDP, % of military spending), both annualized."""
    annual = d_profit * 1e6 * DAYS_PER_YEAR
    return 100.0 * annual / scale.gdp_ru, 100.0 * annual / scale.military_spend


def world_gdp_share(d_cs: float, world_gdp: float = WORLD_GDP_USD) -> float:
    """Annualized surplus change as % of world GDP."""
    return 100.0 * d_cs * 1e6 * DAYS_PER_YEAR / world_gdp


def load_regions(source: "TextIO | str | None" = None) -> list[RegionProfile]:
    """Read region profiles from CSV; the bundled 2021 EU/US/India/China data when ``source`` is None."""
    if source is None:
        text = resources.files("oilcurb").joinpath("data/regions.csv").read_text(encoding="utf-8")
        return _parse_regions(text.splitlines())
    if isinstance(source, str) or hasattr(source, "__fspath__"):
        with open(source, newline="", encoding="utf-8") as fh:
            return _parse_regions(fh)
    return _parse_regions(source)


def _parse_regions(lines) -> list[RegionProfile]:
    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != REGION_COLUMNS:
        raise ValidationError(f"region file must start with header {','.join(REGION_COLUMNS)}")
    regions = []
    for row_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 3:
            raise ValidationError(f"row {row_no}: expected 3 columns, got {len(row)}")
        try:
            gdp, cons = float(row[1]), float(row[2])
        except ValueError:
            raise ValidationError(f"row {row_no}: non-numeric GDP or consumption") from None
        regions.append(RegionProfile(row[0].strip(), gdp, cons))
    if not regions:
        raise ValidationError("no region records")
    return regions
