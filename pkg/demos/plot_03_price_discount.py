"""
Forced price discount
=====================

Russia must sell at ``(1 - delta)`` times the world price. While every field
still covers its costs nothing else changes: the discount is a pure transfer
from Russia to buyers. Deep discounts push fields out and lift the world price.
"""

from oilcurb import calibrate, default_curve, discount_outcome

for horizon in ("short", "long"):
    cal, curve = calibrate(horizon=horizon), default_curve(horizon)
    print(f"\n{horizon} run")
    print(" delta   dp     dS_RU   d_profit_RU    d_CS   p_russia")
    for delta in (0.2, 0.3, 0.5, 0.7, 0.75, 0.8, 0.85, 0.9):
        o = discount_outcome(cal, curve, delta)
        print(f"{delta:6.2f} {o.delta_p:6.2f} {o.ds_ru:8.3f} {o.d_profit_ru:12.1f} {o.d_cs:8.1f} {o.p_russia:8.2f}")

# %%
# Where does Russian supply start to fall? Scan in steps of one percent.
for horizon in ("short", "long"):
    cal, curve = calibrate(horizon=horizon), default_curve(horizon)
    first = next(d / 100 for d in range(100) if discount_outcome(cal, curve, d / 100).ds_ru < 0)
    print(f"{horizon} run: supply first falls at delta = {first:.2f}")

# %%
# Importers gain most at an intermediate discount.
cal, curve = calibrate(), default_curve("short")
best = max((discount_outcome(cal, curve, d / 100).d_cs, d / 100) for d in range(96))
print(f"short run: importer surplus peaks at delta = {best[1]:.2f} ({best[0]:.0f} M USD/day)")
