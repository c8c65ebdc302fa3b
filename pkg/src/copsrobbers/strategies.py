"""Constructive cop strategies (tree chase, territory partitions, grid
covers, subcube partitions) and robber counter-strategies.

The territory machinery follows one scheme: split the vertex set into
territories that are retracts of the whole graph, give each territory a team
that plays a winning sub-strategy against the robber's image under the
retract, and keep shadowing after the image is caught. Once every team holds
its image, the team owning the robber's actual territory holds the robber.
"""

from __future__ import annotations

import math

from .errors import (
    CoverageGap,
    NotATree,
    PackingImpossible,
    RetractInvalid,
    SubcubeTooLarge,
    TooFewCops,
)
from .generators import CubeCodec, GridCodec, box_retract, subcube_partition, subcube_retract
from .graphs import (
    Graph,
    bfs_distances,
    bfs_multi,
    bfs_parents,
    component_of,
    is_tree,
    k_center,
    verify_retract,
)
from .play import CopPolicy, RobberPolicy
from .rng import make_rng, rand_below
from .solver import MAXDIST, extract_policies, solve


def grid_cop_number(d: int) -> int:
    """Cop number of a d-dimensional Cartesian grid with sides >= 2."""
    return (d + 2) // 2


# ---------------------------------------------------------------------------
# robber policies


class StayFarRobber(RobberPolicy):
    """Place at a vertex of maximum distance to the nearest cop, never move."""

    metadata = {"policy": "stay-far"}

    def placement(self, g: Graph, cops) -> int:
        dist = bfs_multi(g, cops)
        best, best_d = 0, -1
        for v in range(g.n):
            if dist[v] > best_d:
                best, best_d = v, dist[v]
        return best

    def move(self, g: Graph, cops, robber: int, rnd: int) -> int:
        return robber


class GreedyRobber(RobberPolicy):
    """Move to the closed-neighbourhood vertex maximising distance to the
    nearest cop; smallest id on ties. Places like the stay-far robber."""

    metadata = {"policy": "greedy"}

    def placement(self, g: Graph, cops) -> int:
        return StayFarRobber().placement(g, cops)

    def move(self, g: Graph, cops, robber: int, rnd: int) -> int:
        dist = bfs_multi(g, cops)
        best, best_d = robber, dist[robber]
        for v in g.closed[robber]:
            if dist[v] > best_d:
                best, best_d = v, dist[v]
        return best


class GreedyFastRobber(RobberPolicy):
    """Greedy robber for the infinitely-fast variant: relocates anywhere in
    its component of the graph minus the cops' vertices."""

    metadata = {"policy": "greedy-fast"}

    def placement(self, g: Graph, cops) -> int:
        return StayFarRobber().placement(g, cops)

    def move(self, g: Graph, cops, robber: int, rnd: int) -> int:
        reachable = component_of(g, robber, blocked=set(cops))
        reachable.add(robber)
        dist = bfs_multi(g, cops)
        best, best_d = robber, dist[robber]
        for v in sorted(reachable):
            if dist[v] > best_d:
                best, best_d = v, dist[v]
        return best


class RandomWalkRobber(RobberPolicy):
    """Uniform step within the closed neighbourhood each round; placement is
    a uniform vertex. Seeded and reproducible."""

    def __init__(self, seed):
        self.rng = make_rng(seed)
        self.metadata = {"policy": "random-walk", "seed": str(seed)}

    def placement(self, g: Graph, cops) -> int:
        return rand_below(self.rng, g.n)

    def move(self, g: Graph, cops, robber: int, rnd: int) -> int:
        nbrs = g.closed[robber]
        return nbrs[rand_below(self.rng, len(nbrs))]


class PigeonholeGridRobber(RobberPolicy):
    """Packs k+1 pairwise-disjoint boxes, sits at the centre of a cop-free
    one (one exists by pigeonhole), and never moves."""

    metadata = {"policy": "pigeonhole-grid"}

    def __init__(self, g: Graph, codec: GridCodec, k: int):
        dims = codec.dims
        d = len(dims)
        m = 1
        while m**d < k + 1:
            m += 1
        sides = [dim // m for dim in dims]
        if any(s < 1 for s in sides):
            raise PackingImpossible(
                f"cannot pack {k + 1} disjoint boxes into grid {dims}"
            )
        self.codec = codec
        self.boxes = []
        self.min_side = min(sides)

        def rec(axis, lo, hi):
            if axis == d:
                self.boxes.append((tuple(lo), tuple(hi)))
                return
            s = sides[axis]
            for j in range(m):
                lo.append(j * s)
                hi.append((j + 1) * s - 1)
                rec(axis + 1, lo, hi)
                lo.pop()
                hi.pop()

        rec(0, [], [])

    def placement(self, g: Graph, cops) -> int:
        cop_coords = {self.codec.coord_of(c) for c in cops}
        for lo, hi in self.boxes:
            if any(
                all(l <= c <= h for c, l, h in zip(coord, lo, hi))
                for coord in cop_coords
            ):
                continue
            centre = tuple(l + (h - l) // 2 for l, h in zip(lo, hi))
            return self.codec.id_of(centre)
        raise PackingImpossible("no cop-free box found")  # k+1 boxes, k cops

    def move(self, g: Graph, cops, robber: int, rnd: int) -> int:
        return robber


class StaticCopPolicy(CopPolicy):
    """Cops that place at fixed positions and never move; test scaffolding."""

    metadata = {"policy": "static"}

    def __init__(self, positions):
        self.positions = tuple(positions)

    def placement(self, g: Graph, k: int):
        if len(self.positions) != k:
            raise ValueError("position count mismatch")
        return self.positions

    def move(self, g: Graph, cops, robber: int, rnd: int):
        return tuple(cops)


# ---------------------------------------------------------------------------
# tree chase


class TreePolicy(CopPolicy):
    """One cop per exact k-center vertex; each cop chases the robber's image
    under the retract onto its radius-rad_k ball (step along the unique tree
    path toward the clamped robber). Captures within rad_k rounds."""

    def __init__(self, g: Graph, k: int):
        if not is_tree(g):
            raise NotATree("tree policy needs an acyclic connected graph")
        self.g = g
        self.k = k
        kc = k_center(g, k, mode="exact")
        self.radius = kc.radius
        homes = list(kc.centers)
        while len(homes) < k:
            homes.append(homes[0])
        self.homes = tuple(homes)
        self._home_walk = [bfs_parents(g, h) for h in self.homes]
        self.metadata = {"policy": "tree", "radius": self.radius}

    def placement(self, g: Graph, k: int):
        if k != self.k:
            raise ValueError("policy built for a different k")
        return self.homes

    def _clamp(self, i: int, v: int) -> int:
        dist, parent = self._home_walk[i]
        steps = dist[v] - self.radius
        while steps > 0:
            v = parent[v]
            steps -= 1
        return v

    def move(self, g: Graph, cops, robber: int, rnd: int):
        out = []
        for i, c in enumerate(cops):
            target = self._clamp(i, robber)
            if c == target:
                out.append(c)
                continue
            # first step of the unique tree path from c toward target
            _, parent = bfs_parents(self.g, target)
            out.append(parent[c])
        return tuple(out)


# ---------------------------------------------------------------------------
# territory partitions


def solver_sub_policy(sub_g: Graph, k_i: int, **caps):
    table = solve(sub_g, k_i, **caps)
    if table.capture_time() >= MAXDIST:
        raise TooFewCops(f"{k_i} cops cannot win on a {sub_g.n}-vertex territory")
    cop_pol, _ = extract_policies(table)
    return cop_pol


class RetractPartitionPolicy(CopPolicy):
    """Territory play: team i runs its sub-policy on territory i against the
    robber's image under the territory's retract.

    territories: iterable of (vertex set, RetractMap, k_i). The sets must
    cover V(g); each retract must pass verification and have the territory as
    its image. Surplus cops idle at vertex 0.
    """

    def __init__(self, g: Graph, territories, sub_policy_factory=solver_sub_policy):
        self.g = g
        covered = set()
        self.teams = []
        for verts, retract, k_i in territories:
            verts = sorted(verts)
            ok, violation = verify_retract(g, retract)
            if not ok:
                raise RetractInvalid(f"territory retract fails: {violation}")
            if retract.image != frozenset(verts):
                raise RetractInvalid("retract image differs from territory set")
            sub_g, to_local, to_global = g.induced(verts)
            sub_policy = sub_policy_factory(sub_g, k_i)
            self.teams.append(
                {
                    "retract": retract,
                    "k": k_i,
                    "sub_g": sub_g,
                    "to_local": to_local,
                    "to_global": to_global,
                    "policy": sub_policy,
                }
            )
            covered.update(verts)
        if covered != set(range(g.n)):
            missing = sorted(set(range(g.n)) - covered)
            raise CoverageGap(f"territories miss vertices {missing[:10]}")
        self.team_k = sum(t["k"] for t in self.teams)
        self.metadata = {
            "policy": "retract-partition",
            "territories": len(self.teams),
        }

    def placement(self, g: Graph, k: int):
        if k < self.team_k:
            raise TooFewCops(f"need {self.team_k} cops, given {k}")
        out = []
        for team in self.teams:
            local = team["policy"].placement(team["sub_g"], team["k"])
            out.extend(team["to_global"][v] for v in local)
        out.extend([0] * (k - self.team_k))  # idle surplus
        return tuple(out)

    def move(self, g: Graph, cops, robber: int, rnd: int):
        out = list(cops)
        base = 0
        for team in self.teams:
            kk = team["k"]
            to_local = team["to_local"]
            local_cops = tuple(to_local[cops[base + i]] for i in range(kk))
            image = team["retract"].apply(robber)
            local_new = team["policy"].move(
                team["sub_g"], local_cops, to_local[image], rnd
            )
            for i, v in enumerate(local_new):
                out[base + i] = team["to_global"][v]
            base += kk
        return tuple(out)


def tree_policy(g: Graph, k: int) -> TreePolicy:
    return TreePolicy(g, k)


def retract_partition_policy(
    g: Graph, territories, sub_policy_factory=solver_sub_policy
) -> RetractPartitionPolicy:
    return RetractPartitionPolicy(g, territories, sub_policy_factory)


def _int_root_floor(t: int, d: int) -> int:
    m = max(1, int(round(t ** (1.0 / d))))
    while m**d > t:
        m -= 1
    while (m + 1) ** d <= t:
        m += 1
    return m


def grid_cover_policy(
    g: Graph, codec: GridCodec, k: int, sub_policy_factory=solver_sub_policy
) -> RetractPartitionPolicy:
    """Cover the grid with floor(k/c) boxes of roughly equal side (c = grid
    cop number), one team of c cops per box playing a winning sub-strategy on
    it. Per-axis tiles may clip at the boundary; overlap is allowed."""
    dims = codec.dims
    d = len(dims)
    c = grid_cop_number(d)
    if k < c:
        raise TooFewCops(f"grid needs at least {c} cops, given {k}")
    t = k // c
    m = _int_root_floor(t, d)
    axis_boxes = []
    for dim in dims:
        side = math.ceil(dim / m)
        starts = list(range(0, dim, side))
        axis_boxes.append([(s, min(s + side, dim) - 1) for s in starts])

    boxes = [[]]
    for ab in axis_boxes:
        boxes = [prefix + [seg] for prefix in boxes for seg in ab]

    territories = []
    for box in boxes:
        lo = tuple(seg[0] for seg in box)
        hi = tuple(seg[1] for seg in box)
        retract = box_retract(g, codec, lo, hi)
        territories.append((sorted(retract.image), retract, c))
    return RetractPartitionPolicy(g, territories, sub_policy_factory)


def choose_subcube_dim(n: int, k: int) -> int:
    """Smallest ell with 2^ell / ell >= 2^n / k (enough cops for one team per
    subcube in the partition)."""
    for ell in range(1, n + 1):
        if (1 << ell) * k >= ell * (1 << n):
            return ell
    return n


def subcube_partition_policy(
    g: Graph,
    codec: CubeCodec,
    k: int,
    ell: int,
    *,
    max_ell: int = 4,
    sub_policy_factory=solver_sub_policy,
) -> RetractPartitionPolicy:
    """Partition the cube into 2^(n-ell) subcubes, each a retract, and give
    each a team of ceil((ell+1)/2) cops with a winning sub-strategy."""
    if ell > max_ell:
        raise SubcubeTooLarge(f"ell={ell} exceeds solver-friendly cap {max_ell}")
    if not 1 <= ell <= codec.n_bits:
        raise ValueError("ell out of range")
    c = (ell + 2) // 2
    teams = 1 << (codec.n_bits - ell)
    if k < teams * c:
        raise TooFewCops(f"need {teams * c} cops for {teams} subcube teams, given {k}")
    territories = []
    for fixed, members in subcube_partition(codec, ell):
        retract = subcube_retract(g, codec, fixed)
        territories.append((list(members), retract, c))
    return RetractPartitionPolicy(g, territories, sub_policy_factory)


def stay_far_robber() -> StayFarRobber:
    return StayFarRobber()


def greedy_robber() -> GreedyRobber:
    return GreedyRobber()


def random_walk_robber(seed) -> RandomWalkRobber:
    return RandomWalkRobber(seed)


def pigeonhole_grid_robber(g: Graph, codec: GridCodec, k: int) -> PigeonholeGridRobber:
    return PigeonholeGridRobber(g, codec, k)
