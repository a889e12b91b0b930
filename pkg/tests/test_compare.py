import pytest

from oilcurb import (
    DomainError,
    burden_frontier,
    discount_outcome,
    equivalent_discount,
    equivalent_restriction,
    indifference_curve,
    quantity_outcome,
)
from oilcurb.compare import INDIFFERENCE_TOL

GRID = [round(0.05 * i, 2) for i in range(19)]


class TestBurdenFrontier:
    @pytest.mark.parametrize("horizon", ["short", "long"])
    def test_quantity_hurts_both(self, cal_sr, cal_lr, curve_sr, curve_lr, horizon):
        cal, curve = (cal_sr, curve_sr) if horizon == "short" else (cal_lr, curve_lr)
        for pt in burden_frontier(cal, curve, GRID[1:], "quantity"):
            assert pt.importer_surplus < 0
            assert pt.russia_loss < 0

    def test_discount_helps_importers(self, cal_sr, curve_sr):
        pts = burden_frontier(cal_sr, curve_sr, [g for g in GRID[1:] if g <= 0.7], "discount")
        assert all(pt.importer_surplus > 0 and pt.russia_loss < 0 for pt in pts)

    def test_zero_extent(self, cal_sr, curve_sr):
        for policy in ("quantity", "discount"):
            [pt] = burden_frontier(cal_sr, curve_sr, [0.0], policy)
            assert (pt.importer_surplus, pt.russia_loss) == (0.0, 0.0)
            assert (pt.importer_surplus_pct_gdp, pt.russia_loss_pct_gdp) == (0.0, 0.0)

    def test_scales_populated(self, cal_sr, curve_sr):
        [pt] = burden_frontier(cal_sr, curve_sr, [0.3], "quantity")
        assert pt.russia_loss_pct_gdp == pytest.approx(pt.russia_loss * 365e6 / 1.787e12 * 100)
        assert pt.importer_surplus_pct_gdp < 0

    def test_extent_domain(self, cal_sr, curve_sr):
        with pytest.raises(DomainError):
            burden_frontier(cal_sr, curve_sr, [1.0], "discount")


class TestIndifference:
    def test_zero(self, cal_sr, curve_sr):
        [pt] = indifference_curve(cal_sr, curve_sr, [0.0])
        assert (pt.alpha, pt.delta, pt.saturated) == (0.0, 0.0, False)

    def test_forty_percent_restriction_matches_twenty_percent_discount(self, cal_sr, curve_sr):
        [pt] = indifference_curve(cal_sr, curve_sr, [0.4])
        assert pt.delta == pytest.approx(0.2, abs=0.02)

    def test_below_diagonal(self, cal_sr, curve_sr):
        pts = indifference_curve(cal_sr, curve_sr, [a for a in GRID if a <= 0.8])
        assert all(pt.delta <= pt.alpha for pt in pts)

    @pytest.mark.parametrize("horizon", ["short", "long"])
    @pytest.mark.parametrize("mode", ["approx", "exact"])
    def test_monotone_and_round_trip(self, cal_sr, cal_lr, curve_sr, curve_lr, horizon, mode):
        cal, curve = (cal_sr, curve_sr) if horizon == "short" else (cal_lr, curve_lr)
        pts = indifference_curve(cal, curve, GRID, mode)
        live = [p for p in pts if not p.saturated]
        assert all(b.delta >= a.delta for a, b in zip(live, live[1:]))
        for p in live:
            target = quantity_outcome(cal, curve, p.alpha, mode).d_profit_ru
            got = discount_outcome(cal, curve, p.delta, mode).d_profit_ru
            assert abs(got - target) <= 2 * INDIFFERENCE_TOL

    def test_saturated_when_unreachable(self, cal_sr, curve_sr):
        delta, saturated = equivalent_discount(cal_sr, curve_sr, -1e6)
        assert saturated and delta < 1.0

    def test_domain(self, cal_sr, curve_sr):
        with pytest.raises(DomainError):
            indifference_curve(cal_sr, curve_sr, [1.0])

    def test_equivalent_restriction(self, cal_sr, curve_sr):
        alpha = equivalent_restriction(cal_sr, curve_sr, 0.2)
        assert alpha == pytest.approx(0.4, abs=0.05)
        assert quantity_outcome(cal_sr, curve_sr, alpha).d_profit_ru == pytest.approx(-0.2 * 101.33 * 7.5, abs=1e-6)
        assert equivalent_restriction(cal_sr, curve_sr, 0.0) == 0.0
