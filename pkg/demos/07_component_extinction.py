# The cluster of 2s grown from the origin dies out quickly when strategy 1 wins the ring.
import numpy as np

from deathbirth import LatticeTopology, PayoffMatrix, SimulationParams, component_extinction

ring = LatticeTopology(1, 1, 200)
for pm in (PayoffMatrix(2, 1, 2, 1), PayoffMatrix(1, 1, 1, 1)):
    times = []
    for r in range(30):
        T = component_extinction(pm, ring, SimulationParams(t_end=1e6, max_events=10**7, seed=r))
        times.append(np.nan if T is None else T)
    times = np.array(times)
    print(pm.as_tuple(), f"finite in {np.isfinite(times).mean():.2f} of runs, "
          f"median extinction time {np.nanmedian(times):.2f}")
