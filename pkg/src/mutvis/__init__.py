"""Exact mutual-visibility computations on small graphs."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    DisconnectedGraphError,
    DistanceMatrix,
    Graph,
    GraphError,
    ProductLabeling,
    all_pairs_distances,
    build_graph,
    cartesian_product,
    corona,
    is_isometric_subgraph,
    is_triangle_free,
    max_degree,
)
from .solvers import (  # noqa: E402
    BoundsReport,
    CapExceededError,
    SolveResult,
    bounds_mu,
    contains_subgraph_h,
    solve_alpha,
    solve_gp,
    solve_mu,
    solve_mu_i,
)
from .visibility import (  # noqa: E402
    are_x_visible,
    geodesic_interval,
    is_gp_set,
    is_independent_mv_set,
    is_mv_set,
)
