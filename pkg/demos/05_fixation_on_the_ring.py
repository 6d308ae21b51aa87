# Cooperation can win on a ring even though defection wins in a well-mixed population.
from deathbirth import (LatticeTopology, PayoffMatrix, SimulationParams, classify_regime,
                        theorem4_verdict)
from deathbirth.simulator import run_replicas, winner_frequency

ring = LatticeTopology(d=1, M=1, L=200)
params = SimulationParams(t_end=1e7, seed=2024, sample_interval=1e6)

for pm in (PayoffMatrix(2, 1, 2, 1), PayoffMatrix(1.9, 1, 2, 1.1), PayoffMatrix(1, 1, 1, 1)):
    summaries, _ = run_replicas(ring, pm, params, replicas=20)
    times = [s.fixation_time for s in summaries if s.fixation_time is not None]
    print(pm.as_tuple(), "well-mixed:", classify_regime(pm).regime,
          " ring prediction:", theorem4_verdict(pm))
    print(f"    strategy 1 fixed in {winner_frequency(summaries):.2f} of runs, "
          f"mean fixation time {sum(times) / len(times):.1f}")

# A planar torus with a very rewarding a11.
plane = LatticeTopology(d=2, M=1, L=30)
summaries, _ = run_replicas(plane, PayoffMatrix(100, 1, 1, 1), params, replicas=10)
print("a11=100 on a 30x30 torus: strategy 1 fixed in",
      winner_frequency(summaries), "of runs")
