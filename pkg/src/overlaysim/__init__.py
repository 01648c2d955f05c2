"""Search and self-adaptation on a simulated unstructured P2P overlay."""
from .adaptation import AdaptationPolicy, RewiringAction, adapt_node, best_candidate, worst_neighbor
from .errors import (
    ConfigurationError,
    EmptyReportError,
    OverlayError,
    SelfLoopError,
    UnknownNodeError,
)
from .experiment import (
    ExperimentConfig,
    ExperimentResult,
    emit_csv,
    format_csv,
    parse_config,
    read_csv,
    run_experiment,
)
from .metrics import CellKey, CellStats, MetricsReport, MetricsRow
from .overlay import NodeState, OverlayNetwork, PeerCache, generate_random_topology
from .search import (
    SearchConfig,
    SearchOutcome,
    SearchRequest,
    bfs_search,
    guided_search,
    record_observation,
)
from .semantic import (
    MAX_DISTANCE,
    ResourceDescription,
    distance,
    matches,
    random_description,
    similarity,
)

__version__ = "0.1.0"
