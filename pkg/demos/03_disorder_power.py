"""
Disorder speeds up charging
===========================

On-site disorder ``eps_i ~ U[-W/2, W/2]`` breaks the translation symmetry
that protects the slow modes of the clean ring. The steady state is still
concentrated at the top of the band, loses a little ergotropy, and is
reached faster, so the average charging power grows with ``W``.

A 32-site ring with a handful of realizations keeps this demo near a
minute; the acceptance suite runs the 64-site, 20-realization version.
"""
from latticebattery.scenarios import RunConfig, run_chain

cfg = RunConfig(sites=32, disorder=[0.0, 0.1, 0.3, 0.5], realizations=4, seed=1)
rep = run_chain(cfg)

print(f"{'W':>4} {'E_ss':>9} {'W_bound':>9} {'P':>9} {'+/-':>8}")
for p in rep.points:
    print(f"{p.parameter:4.1f} {p.e_ss_mean:9.5f} {p.w_bound_mean:9.5f} {p.power_mean:9.5f} {p.power_stderr:8.5f}")

# Each realization keeps most of its free-energy bound as ergotropy.
worst = min(r.report.ergotropy / r.report.w_bound for r in rep.realizations)
print("smallest E_ss / W_bound:", round(worst, 4))
