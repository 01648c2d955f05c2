"""
Flooding vs guided vs adaptive search
=====================================

One replication of the three-way comparison at a reduced scale.  All three
configurations start from the same topology and replay the same request
schedule, so differences come from the algorithms alone.

Flooding explores the whole hop-limited neighbourhood; it finds a match
whenever one exists within the hop limit and its hop count is the shortest
possible.  The guided walk forwards a single message and pays for it with
dead ends.  Adaptive search rewires forwarding peers as it goes.
"""
from overlaysim import ExperimentConfig, format_csv, run_experiment

cfg = ExperimentConfig(num_nodes=150, requests_per_node=20, error_levels=(0.0, 1.0, 2.0, 3.0),
                       snapshot_nodes=None, seed=3)
result = run_experiment(cfg)
print(format_csv(result.report.finalize()))

for row in result.report.finalize():
    mae = "NA" if row.mean_average_error is None else f"{row.mean_average_error:.2f}"
    print(f"{row.config} err={row.allowable_error:g}: fail {row.failure_ratio:6.2%}  "
          f"hops {row.avg_success_hops or float('nan'):.2f}  error {mae}  swaps {row.swaps}")
