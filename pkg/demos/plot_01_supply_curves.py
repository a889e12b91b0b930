"""
Baseline market and Russian supply curves
=========================================

Calibrate the baseline market for both horizons and look at the synthetic
step supply curves that stand in for field-level cost data.
"""

import numpy as np

from oilcurb import calibrate, default_curve, xi
from oilcurb.synthetic import tail_mean_cost

# %%
# The baseline: 99 Mb/d world demand, 7.5 Mb/d Russian exports at 101.33 USD/b.
for horizon in ("short", "long"):
    cal = calibrate(horizon=horizon)
    print(f"{horizon:>5} run: y={cal.y:.4f} eps_d={cal.eps_d} eps_row={cal.eps_row} "
          f"b_d={cal.b_d:.1f} xi={xi(cal):.5f}")

# %%
# Short-run marginal cost is OPEX; long-run adds amortized CAPEX, so the long-run
# curve sits above the short-run one everywhere.
sr, lr = default_curve("short"), default_curve("long")
print(sr)
print(lr)

prices = np.arange(0, 60, 5.0)
print("\n price   S_RU short   S_RU long")
for p in prices:
    print(f"{p:6.0f} {sr.quantity_at_price(p):11.3f} {lr.quantity_at_price(p):11.3f}")

# %%
# Average cost of the costliest slices of supply: these are what a quantity
# restriction takes off the market.
for share in (0.02, 0.2, 0.5):
    print(f"top {share:4.0%}: short {tail_mean_cost(sr, share):6.2f}  long {tail_mean_cost(lr, share):6.2f} USD/b")

# %%
# Russian operating profit at baseline, in million USD/day.
cal = calibrate()
print("\nshort-run rent:", round(cal.p_star * 7.5 - sr.cost_integral(0, 7.5), 1))
