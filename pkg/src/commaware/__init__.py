"""Community-aware centrality measures, Linear Threshold diffusion and
Schulze aggregation of their rankings."""

from commaware.graph import (
    Graph,
    NetworkStats,
    k_core_decomposition,
    largest_connected_component,
    load_edge_list,
    network_stats,
)
from commaware.community import (
    LinkCensus,
    Partition,
    detect_label_propagation,
    link_census,
    load_partition,
    modularity,
)
from commaware.centrality import MEASURES, CentralityScores, Ranking, compute_measure, rank
from commaware.diffusion import LTOutcome, ThresholdSpec, lt_simulate, lt_sweep, select_seeds
from commaware.voting import Ballot, MarginMatrix, build_ballots, margin_matrix, schulze_order, strongest_paths

__version__ = "0.1.0"
