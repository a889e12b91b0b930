"""Partial-equilibrium oil market model for export quotas and forced price discounts."""

__version__ = "0.1.0"

from .compare import (
    BurdenPoint,
    IndifferencePoint,
    burden_frontier,
    equivalent_discount,
    equivalent_restriction,
    indifference_curve,
)
from .errors import CalibrationError, DomainError, OilcurbError, SolverError, ValidationError
from .fields import FieldRecord, StepSupplyCurve, build_curve, load_fields, total_capacity, write_fields
from .market import Horizon, MarketCalibration, calibrate, demand, row_supply
from .policy import (
    Mode,
    PolicyOutcome,
    discount_outcome,
    discount_price_change,
    implied_tail_mean_cost,
    policy_outcome,
    quantity_outcome,
    quantity_price_change,
    xi,
)
from .synthetic import SyntheticSpec, default_curve, generate_synthetic_fields, tail_mean_cost
from .welfare import (
    RegionProfile,
    RussiaScale,
    cs_change_discount,
    cs_change_quantity,
    load_regions,
    regional_breakdown,
    regional_cs,
    russia_scale,
    world_gdp_share,
)

__all__ = [
    "BurdenPoint", "CalibrationError", "DomainError", "FieldRecord", "Horizon", "IndifferencePoint",
    "MarketCalibration", "Mode", "OilcurbError", "PolicyOutcome", "RegionProfile", "RussiaScale",
    "SolverError", "StepSupplyCurve", "SyntheticSpec", "ValidationError", "build_curve", "burden_frontier",
    "calibrate", "cs_change_discount", "cs_change_quantity", "default_curve", "demand", "discount_outcome",
    "discount_price_change", "equivalent_discount", "equivalent_restriction", "generate_synthetic_fields",
    "implied_tail_mean_cost", "indifference_curve", "load_fields", "load_regions", "policy_outcome",
    "quantity_outcome", "quantity_price_change", "regional_breakdown", "regional_cs", "row_supply",
    "russia_scale", "tail_mean_cost", "total_capacity", "world_gdp_share", "write_fields", "xi",
]
