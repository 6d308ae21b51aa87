# Who wins on the nearest-neighbor ring when a21 = 2 a12, drawn as text.
# Rows run over a22 (top = large), columns over a11; '1' and '2' are the
# predicted winners, '.' means neither drift condition applies, and '*' marks
# the prisoner's dilemma triangle.
import numpy as np

from deathbirth import sweep_phase_diagram

grid = np.round(np.linspace(0.1, 4.0, 40), 3)
cells = sweep_phase_diagram(1.0, 2.0, grid, grid, N=2)
lookup = {(c.a11, c.a22): c for c in cells}

for a22 in grid[::-1]:
    line = ""
    for a11 in grid:
        c = lookup[(a11, a22)]
        if c.pd_triangle:
            line += "*"
        else:
            line += {1: "1", 2: "2", None: "."}[c.thm4_winner]
    print(f"{a22:5.2f} {line}")
print("      a11 from 0.1 to 4.0")

counts = {w: sum(c.thm4_winner == w for c in cells) for w in (1, 2, None)}
print("cells won by 1:", counts[1], " by 2:", counts[2], " undecided:", counts[None])

# Inside the triangle cooperation (strategy 1) still wins on the ring for some payoffs.
pd_cells = [c for c in cells if c.pd_triangle]
print("triangle cells:", len(pd_cells), " of which strategy 1 wins:",
      sum(c.thm4_winner == 1 for c in pd_cells))
