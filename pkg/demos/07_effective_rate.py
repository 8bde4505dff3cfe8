"""
Where the bond-dissipation rate comes from
==========================================

A driven ancilla with decay rate ``Gamma`` and detuning ``Delta`` can be
eliminated adiabatically, leaving a bond jump with rate
``gamma = Gamma |Omega|^2 / (Delta^2 + Gamma^2 / 4)``. Far from
resonance this tends to ``Gamma |Omega|^2 / Delta^2``.
"""
from latticebattery import effective_rate

print("Omega = 1, Gamma = 10, Delta = 50:", effective_rate(1.0, 10.0, 50.0), "= 10/2525")
for ratio in (0.5, 1, 2, 5, 10, 20):
    Gamma = 1.0
    Delta = ratio * Gamma
    exact = effective_rate(1.0, Gamma, Delta)
    asym = Gamma / Delta**2
    print(f"Delta/Gamma = {ratio:4}: gamma = {exact:.6f}, asymptote = {asym:.6f}, rel. diff = {abs(exact - asym) / asym:.4f}")
