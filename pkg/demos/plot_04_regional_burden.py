"""
Who pays? Regional burden
=========================

Split the global consumer-surplus change by oil consumption and express it as
a share of each economy's GDP. Russia's loss is scaled by its own GDP.
"""

from oilcurb import calibrate, default_curve, load_regions, policy_outcome, regional_breakdown, russia_scale

regions = load_regions()

for policy, horizon in (("quantity", "short"), ("quantity", "long"), ("discount", "short")):
    cal, curve = calibrate(horizon=horizon), default_curve(horizon)
    print(f"\n{policy}, {horizon} run (% of GDP per year)")
    print("extent " + "".join(f"{r.name:>8}" for r in regions) + "  Russia")
    for extent in (0.1, 0.3, 0.5, 0.7):
        out = policy_outcome(cal, curve, policy, extent)
        cells = "".join(f"{pct:8.2f}" for _, pct in regional_breakdown(out.d_cs, regions))
        print(f"{extent:6.1f} {cells}{russia_scale(out.d_profit_ru)[0]:8.2f}")
