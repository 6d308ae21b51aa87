# How a single player decides to switch, and when that reduces to a voter model.
import numpy as np

from deathbirth import Configuration, LatticeTopology, PayoffMatrix, payoff, switch_probability

top = LatticeTopology(d=1, M=1, L=8)
cfg = Configuration(top, [1, 1, 2, 2, 1, 2, 2, 1])
print("ring:", "".join(map(str, cfg.flat)))

game = PayoffMatrix(a11=3, a12=1, a21=4, a22=2)   # a prisoner's dilemma ordering
for x in range(top.L):
    print(f"site {x}: type {cfg[x]}  payoff {payoff(cfg, game, x):g}  "
          f"switch prob {switch_probability(cfg, game, x):.4f}")

# With every payoff equal the choice is a plain voter step: copy a random neighbor.
neutral = PayoffMatrix(1, 1, 1, 1)
print()
for x in range(top.L):
    n1, n2 = cfg.neighbor_counts(x)
    other = n2 if cfg[x] == 1 else n1
    print(f"site {x}: neutral {switch_probability(cfg, neutral, x):.3f}  "
          f"fraction of other type {other / top.N:.3f}")

# Between the two extremes: mimic a random neighbor with probability 1 - eps.
x = 3
for eps in np.linspace(0, 1, 5):
    print(f"eps={eps:.2f}  p={switch_probability(cfg, game, x, eps):.4f}")
