"""Death-birth updating process for two-strategy games on integer-lattice tori."""

from .lattice import Configuration, LatticeTopology, neighbor_table, neighborhood
from .mean_field import (RegimeReport, ReplicatorTrajectory, classify_regime,
                         integrate_replicator, replicator_rhs)
from .payoff import (DriftTable, PayoffExtrema, PayoffMatrix, drift_closed_form,
                     drift_table, interface_rate, make_payoff_matrix, payoff,
                     payoff_extrema, switch_probability)
from .reference import reference_rate
from .regions import (RegionVerdict, Theorem1Constants, classify_point,
                      lemma_2wins_condition, pd_triangle_membership,
                      region_corner_points, sweep_phase_diagram,
                      theorem1_condition, theorem1_constants, theorem2a_condition,
                      theorem2b_condition, theorem4_verdict)
from .seeding import derive_replica_seed
from .simulator import (DriftEstimate, InterfaceSnapshot, SimulationParams,
                        SimulationRecord, component_extinction, estimate_drift,
                        init_pattern_1d, init_product_measure,
                        interface_observables, run, run_replicas, step_event)

__version__ = "0.1.0"
