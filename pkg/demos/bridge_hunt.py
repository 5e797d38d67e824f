"""
Hunting for a bridge
====================

The theorem's proof splits into two regimes: either every dominance
component stays local, or a single component reaches from K all the way
past K_eps — a bridge.  The field bounds then contradict each other
along the bridge when m is small, which is what forbids critical points
from escaping.  An outside root parked just past the neighborhood makes
a bridge on purpose; sweeping m shows the verdict staying true anyway.
"""

from rootfield import ConvexDomain, ExperimentConfig, emit_svg, \
    run_theorem_experiment, sweep_m

K = ConvexDomain.disk(0.0, 1.0)

# adversarial placement: epsilon 0.25 puts the neighborhood boundary at
# 1.25, and the dominance lobe around a root at 1.05 spills across it
# in both directions
cfg = ExperimentConfig(domain=K, epsilon=0.25, n=2, m=1,
                       root_sampler=[-0.5, 0.5], outside_sampler=[1.05],
                       delta_sweep=(1e-2,), resolution=100.0, seed=0)
rep = run_theorem_experiment(cfg)
d = rep.deltas[0]
print(f"bridged: {d.bridged}")
if d.bridged:
    w = d.witness
    print(f"witness path: {len(w)} cells, "
          f"{w[0]:.3f} (in K) -> {w[-1]:.3f} (past K_eps)")
print(f"verdict still holds: {rep.verdict} "
      f"({rep.crit_in_Keps} critical points in K_eps)")
emit_svg(rep, "bridge_hunt.svg")
print("wrote bridge_hunt.svg\n")

# the frontier table: m growing against fixed n
base = ExperimentConfig(domain=K, epsilon=0.25, n=60, m=0, seed=7)
rows = sweep_m(base, [0, 1, 2, 5, 10, 20, 40])
print(f"{'m':>4} {'m log n / n':>12} {'verdict':>8} {'escape margin':>14}")
for row in rows:
    print(f"{row['m']:>4} {row['m_log_n_over_n']:>12.4f} "
          f"{str(row['verdict']):>8} {row['min_escape_distance']:>14.4f}")
