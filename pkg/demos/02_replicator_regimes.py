# The well-mixed game: four payoff matrices, four long-run behaviours.
from deathbirth import PayoffMatrix, classify_regime, integrate_replicator

games = {
    "strategy 1 dominates": PayoffMatrix(3, 2, 2, 1),
    "strategy 2 dominates": PayoffMatrix(1, 1, 2, 2),
    "bistable": PayoffMatrix(3, 1, 2, 2),
    "coexistence": PayoffMatrix(1, 3, 2, 1),
}

for label, pm in games.items():
    report = classify_regime(pm)
    ends = [integrate_replicator(pm, u0, 100.0, step=0.01).final for u0 in (0.1, 0.4, 0.6, 0.9)]
    star = "" if report.interior_fixed_point is None else f" u*={report.interior_fixed_point:.3f}"
    print(f"{label:22s} a1={report.a1:+g} a2={report.a2:+g} regime={report.regime}{star}")
    print("    from 0.1, 0.4, 0.6, 0.9 ->", " ".join(f"{u:.4f}" for u in ends))

# one trajectory in detail
traj = integrate_replicator(games["coexistence"], 0.1, 20.0, step=0.01, sample_every=200)
for t, u in zip(traj.times, traj.u1_values):
    print(f"t={t:5.1f}  u1={u:.6f}")
