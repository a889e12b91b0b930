"""
Quantity restriction
====================

Russian exports are cut to ``(1 - alpha)`` of baseline. The world price rises,
which softens Russia's loss and hurts oil importers.
"""

from oilcurb import calibrate, default_curve, quantity_outcome

# %%
# Approximate (log-linear price response) and exact market clearing side by side.
for horizon in ("short", "long"):
    cal, curve = calibrate(horizon=horizon), default_curve(horizon)
    print(f"\n{horizon} run")
    print(" alpha  dp_approx  dp_exact  d_profit_RU   d_CS")
    for alpha in (0.1, 0.2, 0.3, 0.5, 0.7):
        a = quantity_outcome(cal, curve, alpha)
        e = quantity_outcome(cal, curve, alpha, mode="exact")
        print(f"{alpha:6.1f} {a.delta_p:10.2f} {e.delta_p:9.2f} {a.d_profit_ru:12.1f} {a.d_cs:8.0f}")

# %%
# Output from the rest of the world only responds in the long run.
cal, curve = calibrate(horizon="long"), default_curve("long")
out = quantity_outcome(cal, curve, 0.5)
print(f"\nlong run, alpha=0.5: dS_RU={out.ds_ru:.2f} dS_ROW={out.ds_row:+.3f} dQ={out.dq:.3f} Mb/d")
