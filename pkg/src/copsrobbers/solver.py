"""Exact game values for k cops versus one robber by retrograde analysis.

The game: cops place first, then the robber; thereafter rounds alternate a
joint cop move (each cop steps within its closed neighbourhood) and a robber
move (one step within the robber's closed neighbourhood). Capture is checked
after the cop move and after the robber move; the robber stepping onto a cop
counts at the cops' round number. Round 0 (placement) is excluded from the
game length.

State values count the cop moves still needed under optimal play:

    V_cop(C, r) = 0 if r in C else 1 + min over joint moves C' of V_rob(C', r)
    V_rob(C, r) = 0 if r in C else max over r' in N[r] of V_cop(C, r')

Cop teams are multisets (co-location allowed), canonically encoded as
nondecreasing tuples, which shrinks the configuration space from n^k to
C(n+k-1, k). The least fixed point is computed by backward induction from
the capture states with per-state counters, so each state is settled after
O(out-degree) work. MAXDIST marks robber-win states.
"""

from __future__ import annotations

import itertools
import math
import struct
from dataclasses import dataclass, field

from .errors import StateBudgetExceeded
from .graphs import MAXDIST, Graph, graph_digest

COP = 0
ROB = 1

DEFAULT_STATE_CAP = 2_000_000
DEFAULT_MOVE_CAP = 20_000_000

_MAGIC = b"CRVT"
_U32_MAX = 0xFFFFFFFF


def estimate_cost(g: Graph, k: int):
    """(state count, joint-move work) for solve(g, k).

    The joint-move work is the exact number of per-config move products the
    retrograde pass enumerates: n times the complete homogeneous symmetric
    polynomial h_k of the closed-neighbourhood sizes.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    states = math.comb(g.n + k - 1, k) * g.n * 2
    sizes = [g.degree(v) + 1 for v in range(g.n)]
    h = [0] * (k + 1)
    h[0] = 1
    for s in sizes:
        for j in range(1, k + 1):
            h[j] += s * h[j - 1]
    return states, h[k] * g.n


@dataclass
class ValueTable:
    """Dense game values for every (cop multiset, robber, mover) state."""

    graph: Graph
    k: int
    configs: tuple
    config_index: dict
    val_cop: list
    val_rob: list
    states_visited: int = 0
    _moves_cache: dict = field(default_factory=dict, repr=False)

    def value(self, config, robber: int, mover: int = COP) -> int:
        ci = self.config_index[tuple(sorted(config))]
        vals = self.val_cop if mover == COP else self.val_rob
        v = vals[ci * self.graph.n + robber]
        return MAXDIST if v is None else v

    def capture_time(self) -> int:
        return self.best_placement()[1]

    def best_placement(self):
        """Lexicographically smallest cop placement minimising the worst-case
        robber placement value, paired with that value."""
        n = self.graph.n
        best_cfg, best_val = None, MAXDIST + 1
        for ci, cfg in enumerate(self.configs):
            base = ci * n
            worst = 0
            for r in range(n):
                v = self.val_cop[base + r]
                if v is None:
                    worst = MAXDIST
                    break
                if v > worst:
                    worst = v
            if worst < best_val:
                best_cfg, best_val = cfg, worst
        return best_cfg, best_val

    def joint_moves(self, ci: int):
        """Canonical configs reachable from configs[ci] in one joint cop move.
        The move relation is symmetric, so this doubles as the predecessor set."""
        cached = self._moves_cache.get(ci)
        if cached is not None:
            return cached
        closed = self.graph.closed
        seen = set()
        for prod in itertools.product(*(closed[c] for c in self.configs[ci])):
            seen.add(tuple(sorted(prod)))
        out = tuple(self.config_index[c] for c in seen)
        self._moves_cache[ci] = out
        return out

    def save(self, path) -> None:
        """Binary dump: magic, n, k, graph digest, then u32 values in state
        index order ((config_index * n + robber) * 2 + mover), MAXDIST as
        0xFFFFFFFF."""
        n = self.graph.n
        with open(path, "wb") as fh:
            fh.write(struct.pack("<4sII32s", _MAGIC, n, self.k, graph_digest(self.graph)))
            out = []
            for ci in range(len(self.configs)):
                base = ci * n
                for r in range(n):
                    for vals in (self.val_cop, self.val_rob):
                        v = vals[base + r]
                        out.append(_U32_MAX if v is None or v >= MAXDIST else v)
            fh.write(struct.pack(f"<{len(out)}I", *out))

    @classmethod
    def load(cls, path, graph: Graph) -> "ValueTable":
        with open(path, "rb") as fh:
            magic, n, k, digest = struct.unpack("<4sII32s", fh.read(44))
            if magic != _MAGIC:
                raise ValueError("not a value-table dump")
            if n != graph.n or digest != graph_digest(graph):
                raise ValueError("dump does not match the supplied graph")
            configs = tuple(itertools.combinations_with_replacement(range(n), k))
            count = len(configs) * n * 2
            raw = struct.unpack(f"<{count}I", fh.read(4 * count))
        val_cop = [None] * (len(configs) * n)
        val_rob = [None] * (len(configs) * n)
        it = iter(raw)
        for ci in range(len(configs)):
            base = ci * n
            for r in range(n):
                c, rb = next(it), next(it)
                val_cop[base + r] = None if c == _U32_MAX else c
                val_rob[base + r] = None if rb == _U32_MAX else rb
        return cls(
            graph=graph,
            k=k,
            configs=configs,
            config_index={c: i for i, c in enumerate(configs)},
            val_cop=val_cop,
            val_rob=val_rob,
            states_visited=sum(v is not None for v in val_cop)
            + sum(v is not None for v in val_rob),
        )


def solve(
    g: Graph,
    k: int,
    *,
    state_cap: int = DEFAULT_STATE_CAP,
    move_cap: int = DEFAULT_MOVE_CAP,
) -> ValueTable:
    if k < 1:
        raise ValueError("k must be at least 1")
    states, moves = estimate_cost(g, k)
    if states > state_cap:
        raise StateBudgetExceeded(f"{states} states exceed cap {state_cap}")
    if moves > move_cap:
        raise StateBudgetExceeded(f"{moves} joint-move pairs exceed cap {move_cap}")

    n = g.n
    closed = g.closed
    configs = tuple(itertools.combinations_with_replacement(range(n), k))
    config_index = {c: i for i, c in enumerate(configs)}
    table = ValueTable(
        graph=g,
        k=k,
        configs=configs,
        config_index=config_index,
        val_cop=[None] * (len(configs) * n),
        val_rob=[None] * (len(configs) * n),
    )
    val_cop, val_rob = table.val_cop, table.val_rob

    # robber-turn counters: remaining robber moves not yet known to be losing
    counter = [0] * (len(configs) * n)
    for r in range(n):
        c = len(closed[r])
        for ci in range(len(configs)):
            counter[ci * n + r] = c

    level = 0
    cur = []
    for ci, cfg in enumerate(configs):
        base = ci * n
        for r in set(cfg):
            val_cop[base + r] = 0
            val_rob[base + r] = 0
            cur.append((ci, r, COP))
            cur.append((ci, r, ROB))

    visited = len(cur)
    while cur:
        nxt = []
        i = 0
        while i < len(cur):
            ci, r, mover = cur[i]
            i += 1
            base = ci * n
            if mover == COP:
                # robber-turn predecessors: (ci, r_prev) with r in N[r_prev]
                for rp in closed[r]:
                    idx = base + rp
                    if val_rob[idx] is None:
                        counter[idx] -= 1
                        if counter[idx] == 0:
                            val_rob[idx] = level
                            cur.append((ci, rp, ROB))
                            visited += 1
            else:
                # cop-turn predecessors: (cj, r) with configs[ci] reachable
                for cj in table.joint_moves(ci):
                    idx = cj * n + r
                    if val_cop[idx] is None:
                        val_cop[idx] = level + 1
                        nxt.append((cj, r, COP))
                        visited += 1
        cur = nxt
        level += 1

    table.states_visited = visited
    return table


def capture_time(g: Graph, k: int, **caps) -> int:
    """Optimal game length with k cops; MAXDIST when k cops cannot win.

    With k >= n the cops can stand on every vertex, so the answer is 0
    without building a table.
    """
    if k >= g.n:
        return 0
    return solve(g, k, **caps).capture_time()


def cop_number(g: Graph, *, max_k: int | None = None, **caps) -> int:
    k = 1
    limit = max_k if max_k is not None else g.n
    while k <= limit:
        if k >= g.n:
            return k
        if solve(g, k, **caps).capture_time() < MAXDIST:
            return k
        k += 1
    raise StateBudgetExceeded(f"no winning k found up to {limit}")


def audit_fixed_point(table: ValueTable) -> list:
    """Re-evaluate the optimality recurrence at every state; returns the
    states whose stored value disagrees (empty list = table is a fixed point)."""
    g = table.graph
    n = g.n
    closed = g.closed
    bad = []
    for ci, cfg in enumerate(table.configs):
        base = ci * n
        occupied = set(cfg)
        succs = table.joint_moves(ci)
        for r in range(n):
            stored_c = table.val_cop[base + r]
            stored_r = table.val_rob[base + r]
            stored_c = MAXDIST if stored_c is None else stored_c
            stored_r = MAXDIST if stored_r is None else stored_r
            if r in occupied:
                exp_c = exp_r = 0
            else:
                best = MAXDIST
                for cj in succs:
                    v = table.val_rob[cj * n + r]
                    v = MAXDIST if v is None else v
                    if v < best:
                        best = v
                exp_c = MAXDIST if best >= MAXDIST else best + 1
                worst = 0
                for rp in closed[r]:
                    v = table.val_cop[base + rp]
                    v = MAXDIST if v is None else v
                    if v > worst:
                        worst = v
                exp_r = worst
            if exp_c != stored_c:
                bad.append((cfg, r, COP, stored_c, exp_c))
            if exp_r != stored_r:
                bad.append((cfg, r, ROB, stored_r, exp_r))
    return bad


def _realize_joint_move(closed, current, target_multiset):
    """Per-cop assignment realising a canonical target multiset from ordered
    cop positions; first lexicographic legal assignment wins."""
    seen = set()
    for perm in itertools.permutations(target_multiset):
        if perm in seen:
            continue
        seen.add(perm)
        if all(dst in closed[src] for src, dst in zip(current, perm)):
            return perm
    raise ValueError("target multiset is not reachable from current positions")


class SolverCopPolicy:
    """Optimal cop play read off a completed value table.

    Placement is the lexicographically smallest optimal config; moves pick
    the joint move minimising the successor robber-turn value, ties broken
    by the lexicographically smallest destination config.
    """

    def __init__(self, table: ValueTable):
        self.table = table
        self.metadata = {"policy": "solver-cops"}

    def placement(self, g: Graph, k: int):
        if k != self.table.k:
            raise ValueError("table was solved for a different k")
        cfg, _ = self.table.best_placement()
        return tuple(cfg)

    def move(self, g: Graph, cops, robber: int, rnd: int):
        t = self.table
        n = g.n
        ci = t.config_index[tuple(sorted(cops))]
        best_val, best_cfg = MAXDIST + 1, None
        for cj in sorted(t.joint_moves(ci), key=lambda j: t.configs[j]):
            v = t.val_rob[cj * n + robber]
            v = MAXDIST if v is None else v
            if v < best_val:
                best_val, best_cfg = v, t.configs[cj]
        return _realize_joint_move(g.closed, tuple(cops), best_cfg)


class SolverRobberPolicy:
    """Optimal robber play: place at (the smallest) vertex of maximum game
    value given the cops, then always move to the neighbour of maximum
    cop-turn value (smallest id on ties)."""

    def __init__(self, table: ValueTable):
        self.table = table
        self.metadata = {"policy": "solver-robber"}

    def _cop_value(self, ci: int, r: int) -> int:
        v = self.table.val_cop[ci * self.table.graph.n + r]
        return MAXDIST if v is None else v

    def placement(self, g: Graph, cops) -> int:
        ci = self.table.config_index[tuple(sorted(cops))]
        best_r, best_v = 0, -1
        for r in range(g.n):
            v = self._cop_value(ci, r)
            if v > best_v:
                best_r, best_v = r, v
        return best_r

    def move(self, g: Graph, cops, robber: int, rnd: int) -> int:
        ci = self.table.config_index[tuple(sorted(cops))]
        best_r, best_v = robber, -1
        for r in g.closed[robber]:
            v = self._cop_value(ci, r)
            if v > best_v:
                best_r, best_v = r, v
        return best_r


def extract_policies(table: ValueTable):
    return SolverCopPolicy(table), SolverRobberPolicy(table)
