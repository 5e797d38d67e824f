"""
Low-potential points on the torus, and how sharp they are
=========================================================

For m charges on the unit-circumference torus there is always a point
at distance >= 1/(10m) from every charge whose potential is at most
20 m log(20m) — an averaging argument over the truncated kernel.  The
grid search below finds such a point every time.  The lattice example
(charges at j/m + i/m) shows the m log m growth is real: its minimal
curve potential over [0, 1] is m H_m / (2 sqrt 2) up to lower order.
"""

import numpy as np

from rootfield import Curve, TorusConfig, lemma1_curve_bound, \
    sharp_example, torus_low_potential_point
from rootfield.charges import ChargeSet, torus_distance

rng = np.random.default_rng(3)

print(f"{'m':>5} {'min dist':>10} {'floor':>10} {'potential':>12} "
      f"{'20m log 20m':>12}")
for m in (5, 20, 80, 200):
    pts = rng.uniform(size=m)
    y, value = torus_low_potential_point(TorusConfig(pts))
    dist = float(torus_distance(y, pts).min())
    bound = 20 * m * np.log(20 * m)
    print(f"{m:>5} {dist:>10.5f} {1/(10*m):>10.5f} {value:>12.2f} "
          f"{bound:>12.2f}")

# the sharp family: ratio value / (m ln m) settles just above 1
print(f"\n{'m':>5} {'min potential':>14} {'m ln m':>10} {'ratio':>8}")
for m in (10, 100, 1000):
    ex = sharp_example(m)
    print(f"{m:>5} {ex.value:>14.2f} {m*np.log(m):>10.2f} {ex.ratio:>8.4f}")

# the curve certificate projects any witness curve onto the torus; the
# chain 2-D potential <= 1-D potential <= torus bound survives the trip
charges = ChargeSet(rng.normal(size=6) + 1j * rng.normal(size=6))
curve = Curve([0.0, 0.4 + 0.3j, 1.0])
w = lemma1_curve_bound(charges, curve)
print(f"\ncurve witness: t = {w.t:.4f}, potential {w.value:.3f}")
print(f"normalized chain: {w.normalized_value:.3f} <= torus "
      f"{w.torus_value:.3f} <= {20*6*np.log(20*6):.3f}")
