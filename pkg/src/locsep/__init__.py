"""Community detection with local separators, and cover evaluation."""

from .baselines import label_propagation
from .graph import (
    Graph,
    ParseError,
    PreprocessReport,
    articulation_points,
    ball,
    components,
    duplicate_graph,
    export_graph,
    load_edge_list,
    preprocess_reduce,
)
from .metrics import (
    BelongingTable,
    Cover,
    MetricsReport,
    belonging_coefficients,
    count_at_threshold,
    density,
    load_cover,
    overlapping_modularity,
    save_cover,
    standard_modularity,
)
from .separators import (
    Decomposition,
    SeparatorSet,
    decompose,
    find_local_1_separators,
    find_local_2_separators,
    refine_hierarchical,
    to_cover,
)

__version__ = "0.1.0"
