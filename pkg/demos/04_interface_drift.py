# Monte Carlo estimates of the interface drift next to the closed forms.
from deathbirth import PayoffMatrix, drift_table, estimate_drift

for pm in (PayoffMatrix(2, 1, 2, 1), PayoffMatrix(3, 1, 4, 2), PayoffMatrix(1, 1, 1, 1)):
    table = drift_table(pm)
    print(pm.as_tuple())
    for gap, exact in ((3, table.D3), (">=4", table.D4)):
        est = estimate_drift(pm, gap, replicas=4, events_per_replica=20_000, seed=7)
        print(f"   gap {gap:>3}: estimate {est.mean_drift:+.4f} +- {est.std_error:.4f}   "
              f"closed form {exact:+.4f}")
    # gap 2 carries two random sites beyond the lone 2, so the estimate sits above D2
    est = estimate_drift(pm, 2, replicas=4, events_per_replica=20_000, seed=7)
    print(f"   gap   2: estimate {est.mean_drift:+.4f} +- {est.std_error:.4f}   "
          f"D2 {table.D2:+.4f}  with wildcards {2.75 - table.p1[(2, 0)]:+.4f}")
