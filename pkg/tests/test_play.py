import json

import pytest

from copsrobbers.errors import IllegalMove
from copsrobbers.generators import gen_cycle, gen_grid, gen_path
from copsrobbers.play import CopPolicy, RobberPolicy, play, worst_case_capture_round
from copsrobbers.solver import extract_policies, solve
from copsrobbers.strategies import StaticCopPolicy, StayFarRobber


class FixedRobber(RobberPolicy):
    def __init__(self, start, moves=()):
        self.start = start
        self.moves = list(moves)

    def placement(self, g, cops):
        return self.start

    def move(self, g, cops, robber, rnd):
        return self.moves.pop(0) if self.moves else robber


class TeleportingCops(CopPolicy):
    def placement(self, g, k):
        return (0,) * k

    def move(self, g, cops, robber, rnd):
        return (robber,) + tuple(cops[1:])


def test_capture_at_placement():
    g, _ = gen_path(5)
    t = play(g, 1, StaticCopPolicy([2]), FixedRobber(2), 10)
    assert t.capture_round == 0
    assert t.rounds == []


def test_timeout_when_cops_never_move():
    g, _ = gen_path(5)
    t = play(g, 1, StaticCopPolicy([0]), StayFarRobber(), 7)
    assert t.capture_round is None
    assert len(t.rounds) == 7


def test_all_vertices_covered_captures_at_round_zero():
    g, _ = gen_path(3)
    t = play(g, 3, StaticCopPolicy([0, 1, 2]), StayFarRobber(), 5)
    assert t.capture_round == 0


def test_illegal_cop_move_identifies_offender():
    g, _ = gen_path(5)
    with pytest.raises(IllegalMove) as exc:
        play(g, 1, TeleportingCops(), FixedRobber(4), 5)
    assert "cop 0" in str(exc.value)


def test_illegal_robber_move():
    g, _ = gen_path(5)

    class JumpyRobber(FixedRobber):
        def move(self, g_, cops, robber, rnd):
            return 0 if robber == 4 else robber

    with pytest.raises(IllegalMove) as exc:
        play(g, 1, StaticCopPolicy([1]), JumpyRobber(4), 5)
    assert exc.value.offender == "robber"


def test_fast_robber_component_moves():
    g, _ = gen_path(7)

    class FastJumper(FixedRobber):
        def move(self, g_, cops, robber, rnd):
            return 6 if robber == 4 else robber

    # cop at 5 blocks: jumping 4 -> 6 crosses the cop vertex
    with pytest.raises(IllegalMove):
        play(g, 1, StaticCopPolicy([5]), FastJumper(4), 3, fast_robber=True)
    # without the wall the same jump is legal
    t = play(g, 1, StaticCopPolicy([1]), FastJumper(4), 3, fast_robber=True)
    assert t.rounds[0][1] == 6
    assert t.metadata["fast_robber"] is True


def test_transcript_round_consistency():
    g, _ = gen_path(7)
    table = solve(g, 1)
    cop_pol, rob_pol = extract_policies(table)
    t = play(g, 1, cop_pol, rob_pol, 20)
    assert t.capture_round == 3
    prev_cops, prev_rob = t.cops_start, t.robber_start
    for cops, rob in t.rounds:
        for a, b in zip(prev_cops, cops):
            assert b in g.closed[a]
        assert rob in g.closed[prev_rob] or rob == prev_rob
        prev_cops, prev_rob = cops, rob
    # final round co-locates
    assert t.rounds[-1][1] in t.rounds[-1][0]


def test_transcript_json_schema():
    g, _ = gen_path(5)
    t = play(g, 2, StaticCopPolicy([0, 4]), FixedRobber(2), 3)
    data = json.loads(t.to_json())
    assert set(data) == {"placements", "rounds", "capture_round", "metadata"}
    assert data["placements"]["cops"] == [0, 4]
    assert all(set(r) == {"cops", "robber"} for r in data["rounds"])


def test_worst_case_capture_round_exact_on_path():
    g, _ = gen_path(7)
    cop_pol, _ = extract_policies(solve(g, 1))
    assert worst_case_capture_round(g, cop_pol, 1, horizon=3) == 3
    # a tighter horizon reports a surviving robber line as None
    assert worst_case_capture_round(g, cop_pol, 1, horizon=2) is None


def test_worst_case_static_cops_never_capture():
    g = gen_cycle(6)
    assert worst_case_capture_round(g, StaticCopPolicy([0]), 1, horizon=5) is None


def test_worst_case_full_cover():
    g, _ = gen_path(3)
    assert worst_case_capture_round(g, StaticCopPolicy([0, 1, 2]), 3, horizon=1) == 0
