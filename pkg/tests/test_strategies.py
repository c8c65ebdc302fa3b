import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from copsrobbers.errors import CoverageGap, NotATree, PackingImpossible, RetractInvalid, TooFewCops
from copsrobbers.generators import (
    box_retract,
    gen_cycle,
    gen_grid,
    gen_grid_dims,
    gen_hypercube,
    gen_path,
    gen_tree,
)
from copsrobbers.graphs import Graph, bfs_multi, k_center, path_retract
from copsrobbers.play import play, worst_case_capture_round
from copsrobbers.solver import capture_time, extract_policies, solve
from copsrobbers.strategies import (
    GreedyRobber,
    PigeonholeGridRobber,
    RandomWalkRobber,
    StaticCopPolicy,
    StayFarRobber,
    grid_cover_policy,
    retract_partition_policy,
    subcube_partition_policy,
    tree_policy,
    choose_subcube_dim,
)


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# --- tree policy


def test_tree_policy_path_vs_optimal_robber():
    g, _ = gen_path(7)
    _, rob = extract_policies(solve(g, 1))
    t = play(g, 1, tree_policy(g, 1), rob, 50)
    assert t.capture_round == 3  # equals the radius


def test_tree_policy_two_cops_matches_rad2():
    g, _ = gen_path(7)
    _, rob = extract_policies(solve(g, 2))
    t = play(g, 2, tree_policy(g, 2), rob, 50)
    assert t.capture_round is not None and t.capture_round <= 2


def test_tree_policy_star_captures_in_one():
    g = star(5)
    _, rob = extract_policies(solve(g, 1))
    t = play(g, 1, tree_policy(g, 1), rob, 10)
    assert t.capture_round == 1


def test_tree_policy_rejects_cycles():
    with pytest.raises(NotATree):
        tree_policy(gen_cycle(4), 1)


@given(st.integers(0, 20), st.integers(1, 3))
def test_tree_policy_exhaustive_within_radius(seed, k):
    g = gen_tree(8, seed)
    if k >= g.n:
        return
    rad = k_center(g, k).radius
    worst = worst_case_capture_round(g, tree_policy(g, k), k, horizon=rad)
    assert worst is not None and worst <= rad


# --- retract partition


def test_single_territory_behaves_like_sub_policy():
    g, _ = gen_path(5)
    from copsrobbers.graphs import RetractMap

    identity = RetractMap(frozenset(range(5)), tuple(range(5)))
    pol = retract_partition_policy(g, [(range(5), identity, 1)])
    _, rob = extract_policies(solve(g, 1))
    t = play(g, 1, pol, rob, 30)
    assert t.capture_round == capture_time(g, 1)


def test_two_ball_cover_of_path():
    g, _ = gen_path(7)
    left = path_retract(g, [0, 1, 2, 3, 4], 0)
    right = path_retract(g, [6, 5, 4, 3, 2], 6)
    pol = retract_partition_policy(
        g, [(sorted(left.image), left, 1), (sorted(right.image), right, 1)]
    )
    worst = worst_case_capture_round(g, pol, 2, horizon=2)
    assert worst is not None and worst <= 2


def test_coverage_gap_detected():
    g, _ = gen_path(7)
    left = path_retract(g, [0, 1, 2, 3], 0)
    with pytest.raises(CoverageGap):
        retract_partition_policy(g, [(sorted(left.image), left, 1)])


def test_retract_invalid_detected():
    g, _ = gen_path(5)
    from copsrobbers.graphs import RetractMap

    broken = RetractMap(frozenset(range(5)), (0, 0, 0, 0, 0))
    with pytest.raises(RetractInvalid):
        retract_partition_policy(g, [(range(5), broken, 1)])


def test_too_few_cops_at_placement():
    g, _ = gen_path(5)
    from copsrobbers.graphs import RetractMap

    identity = RetractMap(frozenset(range(5)), tuple(range(5)))
    pol = retract_partition_policy(g, [(range(5), identity, 2)])
    with pytest.raises(TooFewCops):
        pol.placement(g, 1)


# --- grid cover


def test_grid_cover_paths_three_cops():
    g, codec = gen_path(9)
    pol = grid_cover_policy(g, codec, 3)
    worst = worst_case_capture_round(g, pol, 3, horizon=1)
    assert worst is not None and worst <= 1


def test_grid_cover_whole_grid_single_team():
    g, codec = gen_grid(2, 4)
    pol = grid_cover_policy(g, codec, 2)
    _, rob = extract_policies(solve(g, 2))
    t = play(g, 2, pol, rob, 50)
    assert t.capture_round == capture_time(g, 2) == 3


def test_grid_cover_six_by_six():
    g, codec = gen_grid(2, 6)
    bound = capture_time(gen_grid(2, 3)[0], 2)
    worst = worst_case_capture_round(g, grid_cover_policy(g, codec, 8), 8, horizon=bound)
    assert worst is not None and worst <= bound == 2


def test_grid_cover_too_few():
    g, codec = gen_grid(2, 3)
    with pytest.raises(TooFewCops):
        grid_cover_policy(g, codec, 1)


# --- subcube partition


def test_subcube_degenerate_partition_equals_whole_cube():
    g, codec = gen_hypercube(3)
    pol = subcube_partition_policy(g, codec, 2, 3)
    _, rob = extract_policies(solve(g, 2))
    t = play(g, 2, pol, rob, 20)
    assert t.capture_round == capture_time(g, 2) == 1


def test_subcube_q4():
    g, codec = gen_hypercube(4)
    bound = capture_time(gen_hypercube(3)[0], 2)
    worst = worst_case_capture_round(
        g, subcube_partition_policy(g, codec, 4, 3), 4, horizon=bound
    )
    assert worst is not None and worst <= bound == 1


def test_subcube_too_few_cops():
    g, codec = gen_hypercube(4)
    with pytest.raises(TooFewCops):
        subcube_partition_policy(g, codec, 3, 3)


def test_choose_subcube_dim_minimality():
    for n in range(2, 12):
        for k in (n, 2 * n, 1 << (n - 1)):
            ell = choose_subcube_dim(n, k)
            assert (1 << ell) * k >= ell * (1 << n)
            if ell > 1:
                prev = ell - 1
                assert (1 << prev) * k < prev * (1 << n)


# --- robbers


def test_stay_far_survives_radius_rounds():
    g, _ = gen_path(7)
    cop_pol, _ = extract_policies(solve(g, 1))
    t = play(g, 1, cop_pol, StayFarRobber(), 50)
    assert t.capture_round is not None and t.capture_round >= 3


def test_stay_far_caught_at_placement_when_covered():
    g, _ = gen_path(3)
    t = play(g, 3, StaticCopPolicy([0, 1, 2]), StayFarRobber(), 5)
    assert t.capture_round == 0


def test_stay_far_vs_tree_policy_two_cops():
    g, _ = gen_path(7)
    t = play(g, 2, tree_policy(g, 2), StayFarRobber(), 50)
    assert t.capture_round is not None and t.capture_round >= 2  # rad_2


def test_greedy_flees_to_far_end():
    g, _ = gen_path(7)
    rob = GreedyRobber()
    assert rob.placement(g, (0,)) == 6
    assert rob.move(g, (0,), 5, 1) == 6


def test_greedy_never_decreases_distance():
    for g in (gen_path(5)[0], gen_cycle(5), gen_grid(2, 3)[0]):
        rob = GreedyRobber()
        for cops in itertools.combinations(range(g.n), 2):
            dist = bfs_multi(g, cops)
            for r in range(g.n):
                chosen = rob.move(g, cops, r, 1)
                assert dist[chosen] >= dist[r]


def test_random_walk_reproducible():
    g, _ = gen_hypercube(3)
    runs = []
    for _ in range(2):
        t = play(g, 1, StaticCopPolicy([0]), RandomWalkRobber(99), 10)
        runs.append((t.robber_start, tuple(r for _, r in t.rounds)))
    assert runs[0] == runs[1]


# --- pigeonhole grid robber


def test_pigeonhole_p9_two_cops():
    g, codec = gen_path(9)
    rob = PigeonholeGridRobber(g, codec, 2)
    cop_pol = StaticCopPolicy([0, 4])
    v = rob.placement(g, (0, 4))
    assert min(abs(v - 0), abs(v - 4)) >= 2
    t = play(g, 2, cop_pol, rob, 5)
    assert t.capture_round is None or t.capture_round >= 1


def test_pigeonhole_grid9_survival():
    g, codec = gen_grid(2, 9)
    rob = PigeonholeGridRobber(g, codec, 3)
    assert rob.min_side >= 4
    cops = (0, 8, 72)
    dist = bfs_multi(g, cops)
    v = rob.placement(g, cops)
    assert dist[v] >= rob.min_side // 2


def test_pigeonhole_impossible():
    g, codec = gen_path(3)
    with pytest.raises(PackingImpossible):
        PigeonholeGridRobber(g, codec, 3)
