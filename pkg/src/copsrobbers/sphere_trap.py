"""Sphere trapping: occupy the whole distance-d sphere around the robber's
start within d+1 rounds via a saturating bipartite matching, confining the
robber to the ball, then tighten layer by layer. Certified capture within
2d+1 rounds whenever the matching saturates; a Hall witness is reported (and
greedy pursuit substituted) otherwise.

Also houses the exact threshold formulas governing when the trap (or its
counting counterpart) applies on hypercubes, and the net radius used for
dense random graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, LayerHallFailure
from .graphs import Graph, bfs_distances
from .matching import hall_witness, hopcroft_karp
from .play import CopPolicy
from .rng import make_rng, sample_distinct, sample_with_replacement

# d <= GUARANTEE_SLOPE*n - 2 is the regime where the trap threshold formula
# is a decreasing function of d.
GUARANTEE_SLOPE = 0.5 - math.sqrt(2) / 4


@dataclass(frozen=True)
class LayerDecomposition:
    center: int
    layers: tuple  # layers[i] = vertices at distance exactly i, ascending


def layers(g: Graph, v: int, r_max: int) -> LayerDecomposition:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    dist = bfs_distances(g, v)
    buckets = [[] for _ in range(r_max + 1)]
    for u in range(g.n):
        if dist[u] <= r_max:
            buckets[dist[u]].append(u)
    return LayerDecomposition(v, tuple(tuple(b) for b in buckets))


@dataclass(frozen=True)
class TrapAssignment:
    matching: dict  # target vertex -> cop id
    routes: dict  # cop id -> path (cop position .. target), length <= reach
    reach: int


@dataclass(frozen=True)
class HallWitnessResult:
    deficient_targets: tuple
    reachable_cops: tuple


def _neighbour_masks(g: Graph):
    masks = []
    for v in range(g.n):
        m = 0
        for u in g.adj[v]:
            m |= 1 << u
        masks.append(m)
    return masks


def _route(g: Graph, src: int, dst: int, masks) -> list[int]:
    """Deterministic shortest route src -> dst; fast paths for length <= 2."""
    if src == dst:
        return [src]
    if dst in g.adj[src]:
        return [src, dst]
    common = masks[src] & masks[dst]
    if common:
        mid = (common & -common).bit_length() - 1
        return [src, mid, dst]
    dist = bfs_distances(g, dst)
    path = [src]
    cur = src
    while cur != dst:
        cur = min(u for u in g.adj[cur] if dist[u] == dist[cur] - 1)
        path.append(cur)
    return path


def trap_matching(g: Graph, cops, v: int, d: int, reach: int, mode: str = "hypercube"):
    """Match every vertex of the sphere N_d(v) to a distinct cop that can
    reach it in time.

    hypercube mode admits a cop for a target iff the cop stands on the target
    or at distance exactly d+1 from it; general mode admits any cop within
    `reach`. Returns a TrapAssignment when the matching saturates the sphere,
    otherwise a HallWitnessResult with a deficient target set.
    """
    if reach < 1:
        raise ValueError("reach must be at least 1")
    if mode not in ("hypercube", "general"):
        raise ValueError(f"unknown mode {mode!r}")
    dist_v = bfs_distances(g, v)
    targets = [u for u in range(g.n) if dist_v[u] == d]
    if not targets:
        return TrapAssignment({}, {}, reach)

    cops = list(cops)
    masks = _neighbour_masks(g)
    need = d + 1 if mode == "hypercube" else reach
    adj = []
    if mode == "general" and reach == 2:
        # dist(pos, t) <= 2 iff equal, adjacent, or sharing a neighbour;
        # avoids one BFS per target on dense graphs
        for t in targets:
            tmask = masks[t]
            adj.append(
                [
                    cop_id
                    for cop_id, pos in enumerate(cops)
                    if pos == t or (tmask >> pos) & 1 or tmask & masks[pos]
                ]
            )
    else:
        for t in targets:
            dist_t = bfs_distances(g, t)
            elig = []
            for cop_id, pos in enumerate(cops):
                if mode == "hypercube":
                    if pos == t or dist_t[pos] == d + 1:
                        elig.append(cop_id)
                elif dist_t[pos] <= reach:
                    elig.append(cop_id)
            adj.append(elig)

    # prefer cops already standing on their target, then augment
    size, pair_left, pair_right = hopcroft_karp(adj, len(cops))
    if size < len(targets):
        W, NW = hall_witness(adj, pair_left, pair_right)
        return HallWitnessResult(
            tuple(targets[i] for i in W), tuple(sorted(NW))
        )
    matching = {}
    routes = {}
    for i, t in enumerate(targets):
        cop_id = pair_left[i]
        matching[t] = cop_id
        routes[cop_id] = tuple(_route(g, cops[cop_id], t, masks))
        if len(routes[cop_id]) - 1 > max(need, reach):
            raise AssertionError("route longer than the admissibility bound")
    return TrapAssignment(matching, routes, reach)


def tighten_step(g: Graph, v: int, i: int, occupiers):
    """One tightening move: cops covering layer i move so layer i-1 becomes
    fully covered; surplus cops step to their smallest inward neighbour.

    occupiers: (cop id, position) pairs, positions on layer i covering it
    entirely. Returns {cop id: new position}. Raises LayerHallFailure with a
    deficient inner set when no saturating matching exists.
    """
    if i < 1:
        raise ValueError("i must be at least 1")
    dist_v = bfs_distances(g, v)
    layer_inner = [u for u in range(g.n) if dist_v[u] == i - 1]
    layer_outer = {u for u in range(g.n) if dist_v[u] == i}
    positions = [pos for _, pos in occupiers]
    if not layer_outer <= set(positions):
        raise ValueError("occupiers must cover layer i")

    adj = []
    for t in layer_inner:
        t_nbrs = set(g.adj[t])
        adj.append([j for j, pos in enumerate(positions) if pos in t_nbrs])
    size, pair_left, pair_right = hopcroft_karp(adj, len(positions))
    if size < len(layer_inner):
        W, _ = hall_witness(adj, pair_left, pair_right)
        raise LayerHallFailure([layer_inner[w] for w in W])

    moves = {}
    for t_idx, occ_idx in enumerate(pair_left):
        moves[occupiers[occ_idx][0]] = layer_inner[t_idx]
    for j, (cop_id, pos) in enumerate(occupiers):
        if cop_id in moves:
            continue
        inward = [u for u in g.adj[pos] if dist_v[u] == i - 1]
        moves[cop_id] = min(inward) if inward else pos
    return moves


class SphereTrapPolicy(CopPolicy):
    """Random placement, then trap the robber's starting sphere.

    Placement is a uniform k-subset when k <= n and uniform with replacement
    otherwise (teams may co-locate). The trap is set against the robber's
    first observed position; per-run success is certified by the matching,
    never assumed. On Hall failure the policy records the witness and falls
    back to greedy shortest-path pursuit.
    """

    def __init__(self, g: Graph, k: int, d: int, mode: str = "hypercube", seed=0):
        if d < 0:
            raise ValueError("d must be nonnegative")
        self.g = g
        self.k = k
        self.d = d
        self.mode = mode
        self.seed = seed
        self.reach = d + 1
        self._phase = "place"
        self._assignment = None
        self._route_pos = {}
        self._tighten_layer = None
        self.metadata = {
            "policy": "sphere-trap",
            "mode": mode,
            "d": d,
            "matching_saturated": False,
        }

    def placement(self, g: Graph, k: int):
        rng = make_rng(f"sphere-trap:{self.seed}")
        if k <= g.n:
            pos = sample_distinct(rng, g.n, k)
        else:
            pos = sample_with_replacement(rng, g.n, k)
        return tuple(pos)

    def _setup(self, cops, robber):
        result = trap_matching(
            self.g, cops, robber, self.d, self.reach, mode=self.mode
        )
        if isinstance(result, TrapAssignment):
            self._assignment = result
            self._route_pos = {cid: 0 for cid in result.routes}
            self._phase = "route"
            self._rounds_routed = 0
            self.metadata["matching_saturated"] = True
            self.metadata["certified_bound"] = 2 * self.d + 1
        else:
            self._phase = "greedy"
            self.metadata["matching_saturated"] = False
            self.metadata["hall_deficient"] = list(result.deficient_targets)

    def move(self, g: Graph, cops, robber: int, rnd: int):
        if self._phase == "place":
            self._trap_center = robber
            self._setup(cops, robber)

        if self._phase == "greedy":
            dist = bfs_distances(g, robber)
            out = []
            for c in cops:
                if dist[c] == 0:
                    out.append(c)
                    continue
                out.append(min(u for u in g.adj[c] if dist[u] == dist[c] - 1))
            return tuple(out)

        out = list(cops)
        if self._phase == "route":
            for cid, route in self._assignment.routes.items():
                p = self._route_pos[cid]
                if p + 1 < len(route):
                    self._route_pos[cid] = p + 1
                    out[cid] = route[p + 1]
            self._rounds_routed += 1
            if self._rounds_routed >= self.reach:
                self._phase = "tighten"
                self._tighten_layer = self.d
            return tuple(out)

        # tighten phase; layer 0 reached means the ball is exhausted
        if self._tighten_layer is not None and self._tighten_layer >= 1:
            dist_v = bfs_distances(g, self._trap_center)
            occupiers = [
                (cid, pos)
                for cid, pos in enumerate(cops)
                if dist_v[pos] == self._tighten_layer
            ]
            try:
                moves = tighten_step(g, self._trap_center, self._tighten_layer, occupiers)
            except LayerHallFailure as exc:
                self.metadata["tighten_failure"] = list(exc.witness)
                self._phase = "greedy"
                return self.move(g, cops, robber, rnd)
            for cid, pos in moves.items():
                out[cid] = pos
            self._tighten_layer -= 1
        return tuple(out)


def sphere_trap_policy(g, k, d, mode="hypercube", seed=0) -> SphereTrapPolicy:
    return SphereTrapPolicy(g, k, d, mode=mode, seed=seed)


# ---------------------------------------------------------------------------
# threshold formulas


def falling_factorial(a: int, b: int) -> int:
    """(a)_b = a (a-1) ... (a-b+1); b = 0 gives 1."""
    if b < 0:
        raise DomainError("falling factorial needs b >= 0")
    out = 1
    for i in range(b):
        out *= a - i
    return out


def trap_cop_threshold(n: int, d: int) -> Fraction:
    """Cop count above which the sphere trap certifies capture within 2d+1
    on the n-cube: 36 * 2^n * (2d+1)_{d+1} / (n-d)_{d+1}, exact."""
    if n < 1 or d < 0:
        raise DomainError("need n >= 1 and d >= 0")
    denom = falling_factorial(n - d, d + 1)
    if denom <= 0:
        raise DomainError(f"(n-d)_(d+1) nonpositive for n={n}, d={d}")
    return Fraction(36 * (1 << n) * falling_factorial(2 * d + 1, d + 1), denom)


def counting_cop_bound(n: int, d: int) -> Fraction:
    """Cop count below which the robber survives more than d rounds on the
    n-cube: 2^n / sum_{i<=d} C(n, i), exact."""
    if n < 1 or d < 0:
        raise DomainError("need n >= 1 and d >= 0")
    ball = sum(math.comb(n, i) for i in range(min(d, n) + 1))
    return Fraction(1 << n, ball)


def net_radius(n: int, degree: float, k: int, C: float = 10.0) -> int:
    """Smallest positive integer r with degree^(r+1) >= C n ln(n) / k."""
    if n < 2 or degree <= 0 or k < 1 or C <= 0:
        raise DomainError("need n >= 2, degree > 0, k >= 1, C > 0")
    target = C * n * math.log(n) / k
    r = 1
    while degree ** (r + 1) < target:
        r += 1
        if r > 64:
            raise DomainError("no net radius up to 64; degree too small")
    return r


def trap_depth_in_guarantee_range(n: int, d: int) -> bool:
    return d <= GUARANTEE_SLOPE * n - 2


def thresholds(n: int, d: int, k: int, C: float = 10.0) -> dict:
    """All threshold quantities for one (n, d, k, C); entries that are out of
    their formula's domain come back as None."""
    out = {"n": n, "d": d, "k": k, "C": C}
    try:
        out["qn_upper_k_min"] = trap_cop_threshold(n, d)
    except DomainError:
        out["qn_upper_k_min"] = None
    try:
        out["qn_lower_k_max"] = counting_cop_bound(n, d)
    except DomainError:
        out["qn_lower_k_max"] = None
    try:
        out["r"] = net_radius(n, float(d), k, C)
    except DomainError:
        out["r"] = None
    out["d_within_guarantee"] = trap_depth_in_guarantee_range(n, d)
    return out
