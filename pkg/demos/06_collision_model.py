"""
Charging by repeated collisions
===============================

A qubit battery meets a stream of thermal ancillas. The coupling
``g (s+ s+ + s- s-)`` only exchanges ``|gg>`` and ``|ee>``, so each
collision conserves ``-H_B + H_A``. The battery therefore relaxes to a
Gibbs state of ``-H_B``, an inverted state with ergotropy
``omega tanh(beta omega / 2)``.
"""
import numpy as np

from latticebattery.collision import CollisionSpec, inverted_gibbs, iterate_to_fixed_point

spec = CollisionSpec(omega=1.0, beta=1.0, coupling=1.0, duration=np.pi / 4)
rho, work, history = iterate_to_fixed_point(spec)
pi = inverted_gibbs(spec)

for k in (0, 1, 2, 5, 10, 20, len(history) - 1):
    h = history[k]
    print(f"collision {k:2d}: excited population {h[1, 1].real:.10f}, distance {np.linalg.norm(h - pi):.2e}")

print("closed form excited population:", 1 / (1 + np.exp(-1)))
print("fixed-point ergotropy:", work, "closed form:", np.tanh(0.5))
