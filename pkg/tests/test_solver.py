import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from copsrobbers.errors import StateBudgetExceeded
from copsrobbers.generators import gen_cycle, gen_gnp, gen_grid, gen_grid_dims, gen_hypercube, gen_path, gen_tree
from copsrobbers.graphs import MAXDIST, Graph, domination_number, k_center
from copsrobbers.play import play
from copsrobbers.solver import (
    COP,
    ROB,
    ValueTable,
    audit_fixed_point,
    capture_time,
    cop_number,
    estimate_cost,
    extract_policies,
    solve,
)

from oracles import INF, naive_capture_time, naive_game_values


def assert_matches_oracle(g, k):
    table = solve(g, k)
    vc, vr = naive_game_values(g, k)
    for (C, r), want in vc.items():
        got = table.value(C, r, COP)
        assert got == (MAXDIST if want == INF else want), (C, r, "cop")
    for (C, r), want in vr.items():
        got = table.value(C, r, ROB)
        assert got == (MAXDIST if want == INF else want), (C, r, "rob")


def test_oracle_path_one_cop():
    assert_matches_oracle(gen_path(5)[0], 1)


def test_oracle_cycle_one_and_two_cops():
    c4 = gen_cycle(4)
    assert_matches_oracle(c4, 1)
    assert_matches_oracle(c4, 2)
    assert_matches_oracle(gen_cycle(5), 2)


def test_oracle_hypercube():
    q3, _ = gen_hypercube(3)
    assert_matches_oracle(q3, 1)


@given(st.integers(0, 12), st.integers(1, 2))
def test_oracle_random_graphs(seed, k):
    g = gen_gnp(5, 0.5, seed)
    assert_matches_oracle(g, k)


# --- value examples


def test_k2_all_values_at_most_one():
    g = Graph.from_edges(2, [(0, 1)])
    table = solve(g, 1)
    for C in table.configs:
        for r in range(2):
            assert table.value(C, r, COP) <= 1


def test_p3_center_value():
    g, _ = gen_path(3)
    table = solve(g, 1)
    assert table.value((1,), 0, COP) == 1
    assert table.value((1,), 2, COP) == 1


def test_c4_one_cop_has_robber_wins():
    table = solve(gen_cycle(4), 1)
    robber_wins = [
        (C, r)
        for C in table.configs
        for r in range(4)
        if table.value(C, r, ROB) == MAXDIST
    ]
    assert robber_wins  # one cop cannot corner on a cycle


# --- capture times


def test_capture_time_examples():
    assert capture_time(gen_path(7)[0], 1) == 3
    assert capture_time(gen_grid_dims([3, 3])[0], 2) == 2
    assert capture_time(gen_hypercube(3)[0], 2) == 1


def test_capture_time_q4_three_cops():
    q4, _ = gen_hypercube(4)
    capt = capture_time(q4, 3, move_cap=40_000_000)
    assert capt >= 2
    # counting threshold admits three cops: 3 < 16 / (1 + 4)
    assert 3 * (1 + 4) < 16


def test_capture_time_matches_naive_on_smalls():
    for g in (gen_path(4)[0], gen_cycle(5), gen_tree(6, 3)):
        for k in (1, 2):
            want = naive_capture_time(g, k)
            got = capture_time(g, k)
            assert got == (MAXDIST if want == INF else want)


def test_capture_time_k_ge_n_fast_path():
    g, _ = gen_path(4)
    assert capture_time(g, 4) == 0
    assert capture_time(g, 9) == 0
    # agreement with a full solve at k = n on a tiny instance
    table = solve(g, 4, state_cap=10_000_000, move_cap=100_000_000)
    assert table.capture_time() == 0


# --- cop number


def test_cop_number_trees_is_one():
    for seed in range(5):
        assert cop_number(gen_tree(8, seed)) == 1


def test_cop_number_cycle_and_cube():
    assert cop_number(gen_cycle(4)) == 2
    assert cop_number(gen_hypercube(3)[0]) == 2
    assert cop_number(gen_hypercube(2)[0]) == 2


# --- invariants


@given(st.integers(0, 15))
def test_monotone_endpoints_lower_bounds(seed):
    g = gen_gnp(6, 0.5, seed)
    if not g.is_connected():
        return
    capts = {k: capture_time(g, k) for k in range(1, g.n + 1)}
    for k in range(1, g.n):
        assert capts[k + 1] <= capts[k]
    gamma = domination_number(g)
    if gamma < g.n:
        assert capts[gamma] == 1
    assert capts[g.n] == 0
    from copsrobbers.graphs import metrics

    diam = metrics(g).diameter
    for k in range(1, g.n):
        if capts[k] < MAXDIST:
            assert capts[k] >= k_center(g, k).radius
            assert capts[k] >= -(-(diam - k + 1) // (2 * k))


def test_fixed_point_audit_clean():
    for g, k in ((gen_path(6)[0], 1), (gen_cycle(5), 2), (gen_tree(7, 1), 2)):
        assert audit_fixed_point(solve(g, k)) == []


def test_fixed_point_audit_detects_corruption():
    table = solve(gen_path(4)[0], 1)
    table.val_cop[5] = 99
    assert audit_fixed_point(table) != []


# --- budgets


def test_state_budget():
    g, _ = gen_grid(2, 4)
    with pytest.raises(StateBudgetExceeded):
        solve(g, 3, state_cap=100)
    with pytest.raises(StateBudgetExceeded):
        solve(g, 3, move_cap=100)


def test_estimate_cost_counts_states():
    g, _ = gen_path(4)
    states, moves = estimate_cost(g, 2)
    import math

    assert states == math.comb(4 + 1, 2) * 4 * 2
    # joint-move work: sum over configs of the per-config move product, times n
    total = 0
    for C in itertools.combinations_with_replacement(range(4), 2):
        prod = 1
        for c in C:
            prod *= len(g.closed[c])
        total += prod
    assert moves == total * g.n


def test_cop_number_budget_error():
    g = gen_cycle(4)
    with pytest.raises(StateBudgetExceeded):
        cop_number(g, state_cap=8)


# --- extracted policies


def test_policy_replay_reproduces_capture_time():
    for g, k, want in (
        (gen_path(7)[0], 1, 3),
        (gen_grid_dims([3, 3])[0], 2, 2),
        (gen_tree(9, 4), 1, None),
    ):
        table = solve(g, k)
        capt = table.capture_time()
        if want is not None:
            assert capt == want
        cop_pol, rob_pol = extract_policies(table)
        t = play(g, k, cop_pol, rob_pol, max_rounds=4 * g.n)
        assert t.capture_round == capt


def test_solver_robber_survives_against_any_cop():
    """The extracted robber is never caught before the capture time, whatever
    the cops do (here: a few scripted and random cop policies)."""
    from copsrobbers.strategies import StaticCopPolicy
    from copsrobbers.play import CopPolicy
    import random

    g = gen_cycle(5)
    k = 2
    table = solve(g, k)
    capt = table.capture_time()
    _, rob_pol = extract_policies(table)

    class RandomCops(CopPolicy):
        def __init__(self, seed):
            self.rng = random.Random(seed)

        def placement(self, g_, k_):
            return tuple(self.rng.randrange(g_.n) for _ in range(k_))

        def move(self, g_, cops, robber, rnd):
            return tuple(self.rng.choice(g_.closed[c]) for c in cops)

    for seed in range(10):
        t = play(g, k, RandomCops(seed), rob_pol, max_rounds=30)
        assert t.capture_round is None or t.capture_round >= capt


# --- binary dump


def test_table_dump_round_trip(tmp_path):
    g = gen_tree(7, 2)
    table = solve(g, 2)
    path = tmp_path / "table.bin"
    table.save(path)
    loaded = ValueTable.load(path, g)
    assert loaded.val_cop == table.val_cop
    assert loaded.val_rob == table.val_rob
    assert loaded.k == 2


def test_table_dump_rejects_wrong_graph(tmp_path):
    g = gen_tree(7, 2)
    other = gen_tree(7, 3)
    path = tmp_path / "table.bin"
    solve(g, 1).save(path)
    with pytest.raises(ValueError):
        ValueTable.load(path, other)
