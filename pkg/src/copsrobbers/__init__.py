"""Pursuit-evasion games on reflexive graphs: exact game values and capture
times by retrograde analysis, constructive cop strategies with certified
bounds, robber counter-strategies, and a verification harness."""

__version__ = "0.1.0"

from .graphs import (
    MAXDIST,
    Graph,
    KCenterResult,
    Metrics,
    RetractMap,
    bfs_distances,
    domination_number,
    k_center,
    metrics,
    path_retract,
    verify_retract,
)
from .generators import (
    CubeCodec,
    GridCodec,
    box_retract,
    from_spec,
    gen_cycle,
    gen_gnp,
    gen_grid,
    gen_grid_dims,
    gen_hypercube,
    gen_path,
    gen_tree,
    load_graph,
    save_graph,
    subcube_retract,
)
from .solver import (
    ValueTable,
    capture_time,
    cop_number,
    estimate_cost,
    extract_policies,
    solve,
)
from .play import CopPolicy, PlayTranscript, RobberPolicy, play, worst_case_capture_round
from .strategies import (
    grid_cover_policy,
    greedy_robber,
    pigeonhole_grid_robber,
    random_walk_robber,
    retract_partition_policy,
    stay_far_robber,
    subcube_partition_policy,
    tree_policy,
)
from .sphere_trap import (
    layers,
    net_radius,
    sphere_trap_policy,
    thresholds,
    tighten_step,
    trap_matching,
)
from .planar import (
    SeparatorResult,
    separator,
    separator_sweep_policy,
    three_cop_planar_policy,
    verify_separator,
)
from .experiments import (
    MCConfig,
    g_eval,
    mc_run,
    qn_regime,
    regime_constants,
    verify_suite,
)
