# Illustration only: two altruistic strategies on a torus with a wide neighborhood.
# Both types persist for a long time before the finite torus finally fixates.
import numpy as np

from deathbirth import LatticeTopology, PayoffMatrix, SimulationParams, classify_regime, run
from deathbirth.simulator import init_product_measure

pm = PayoffMatrix(1, 3, 3, 1)   # a1 = a2 = -2: coexistence when well mixed
print("well-mixed:", classify_regime(pm).to_dict())

top = LatticeTopology(d=2, M=3, L=40)
start = init_product_measure(top, 0.2, seed=3)
rec = run(start, pm, SimulationParams(t_end=200, seed=3, sample_interval=10))
for t, rho in zip(rec.times, rec.density1):
    print(f"t={t:6.1f}  density of strategy 1 = {rho:.3f}  " + "#" * int(50 * rho))
print("fixed:", rec.fixation, " events:", rec.event_count)
print("time-averaged density after t=50:", np.mean(rec.density1[rec.times >= 50]).round(3))
