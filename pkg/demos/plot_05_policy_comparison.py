"""
Comparing the two sanctions
===========================

For the same damage to Russia, which policy costs importers less? And which
restriction would Russia accept instead of a given discount?
"""

from oilcurb import burden_frontier, calibrate, default_curve, equivalent_restriction, indifference_curve

cal, curve = calibrate(), default_curve("short")
grid = [0.1, 0.2, 0.3, 0.4, 0.5]

# %%
# Burden frontier: importers lose under a restriction and gain under a discount.
for policy in ("quantity", "discount"):
    print(f"\n{policy}")
    for pt in burden_frontier(cal, curve, grid, policy):
        print(f"  {pt.extent:.1f}: importers {pt.importer_surplus:+8.1f}  Russia {pt.russia_loss:+7.1f} M USD/day "
              f"({pt.russia_loss_pct_gdp:+.2f}% of GDP)")

# %%
# Indifference: the discount that costs Russia as much as each restriction.
print("\nalpha -> equivalent delta")
for pt in indifference_curve(cal, curve, [0.1, 0.2, 0.4, 0.6, 0.8]):
    print(f"  {pt.alpha:.1f} -> {pt.delta:.3f}{'  (capped)' if pt.saturated else ''}")

print(f"\na 20% discount hurts like a {equivalent_restriction(cal, curve, 0.2):.0%} restriction")
