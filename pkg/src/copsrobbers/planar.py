"""Separator sweeps and shortest-path guarding for planar-style play.

Two cop strategies live here:

* separator_sweep_policy: stationed teams occupy balanced separators of the
  robber's shrinking territory until nothing is left. Works against the
  ordinary robber and the infinitely-fast variant (territory is recomputed
  from scratch every phase, so robber speed never enters the bookkeeping).

* three_cop_planar_policy: the three-cop phase machine. One cop guards an
  isometric path by holding the robber's shadow (image under the path
  retract); phases repeatedly wall off the robber's component with a new
  guarded path and then release every guard whose path no longer bounds the
  territory. Regions are operationalised as connected components of the
  graph minus guarded vertices; planarity is not checked, but a territory
  that stops shrinking raises ProgressStall.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .errors import (
    DisconnectedGraph,
    NoBalancedLevel,
    ProgressStall,
    SearchSpaceTooLarge,
    TeamBudgetExceeded,
)
from .graphs import MAXDIST, Graph, bfs_distances, component_of, metrics
from .play import CopPolicy


# ---------------------------------------------------------------------------
# balanced separators


@dataclass(frozen=True)
class SeparatorResult:
    separator: tuple
    side_a: tuple
    side_b: tuple


def verify_separator(g: Graph, res: SeparatorResult):
    """Check the separator contract; returns (ok, reason)."""
    s, a, b = set(res.separator), set(res.side_a), set(res.side_b)
    if s | a | b != set(range(g.n)) or (s & a) or (s & b) or (a & b):
        return False, "S, A, B do not partition V"
    if 3 * len(a) > 2 * g.n or 3 * len(b) > 2 * g.n:
        return False, "a side exceeds 2n/3"
    for u, v in g.edges():
        if (u in a and v in b) or (u in b and v in a):
            return False, f"edge ({u},{v}) joins A and B"
    return True, None


def _split_components(sizes, n):
    """Assign component sizes to two sides, each at most 2n/3, minimising the
    larger side; returns the side-A index set or None when impossible."""
    if any(3 * s > 2 * n for s in sizes):
        return None
    total = sum(sizes)
    limit = (2 * n) // 3
    prefix_reach = [1]
    for s in sizes:
        prefix_reach.append(prefix_reach[-1] | (prefix_reach[-1] << s))
    reach = prefix_reach[-1]
    best_a = None
    for a in range(total // 2, -1, -1):
        if (reach >> a) & 1 and total - a <= limit and a <= limit:
            best_a = a
            break
    if best_a is None:
        return None
    chosen = set()
    remaining = best_a
    for i in range(len(sizes) - 1, -1, -1):
        s = sizes[i]
        if s <= remaining and (prefix_reach[i] >> (remaining - s)) & 1:
            chosen.add(i)
            remaining -= s
    return chosen


def _components_masks(n, nbr_masks, removed_mask):
    """Connected components of the graph minus `removed_mask`, as bitmasks."""
    todo = ((1 << n) - 1) & ~removed_mask
    comps = []
    while todo:
        start = todo & -todo
        comp = start
        frontier = start
        while frontier:
            grow = 0
            f = frontier
            while f:
                bit = f & -f
                f ^= bit
                grow |= nbr_masks[bit.bit_length() - 1]
            grow &= todo & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        todo &= ~comp
    return comps


def _mask_vertices(mask):
    out = []
    while mask:
        bit = mask & -mask
        out.append(bit.bit_length() - 1)
        mask ^= bit
    return out


def separator(g: Graph, mode: str = "bfs_level", *, exact_max_n: int = 25,
              subset_cap: int = 2_000_000) -> SeparatorResult:
    """Balanced vertex separator: S, A, B partition V, no A-B edge, both
    sides at most 2n/3.

    exact: smallest S by subset search, ties by most balanced split then
    lexicographically smallest S. bfs_level: cheapest single BFS level from
    a vertex of maximum eccentricity (same tie-break), widening to two
    consecutive levels only if no single level balances, which cannot happen
    on a connected input; the fallback stays for safety.
    """
    if g.n == 0:
        raise DisconnectedGraph("empty graph")
    if not g.is_connected():
        raise DisconnectedGraph("separator needs a connected graph")

    if mode == "exact":
        if g.n > exact_max_n:
            raise SearchSpaceTooLarge(f"exact separator capped at n <= {exact_max_n}")
        n = g.n
        nbr_masks = [0] * n
        for u, v in g.edges():
            nbr_masks[u] |= 1 << v
            nbr_masks[v] |= 1 << u
        budget = subset_cap
        for size in range(n + 1):
            best = None  # (maxside, combo, comps, chosen)
            for combo in itertools.combinations(range(n), size):
                budget -= 1
                if budget < 0:
                    raise SearchSpaceTooLarge("separator subset budget exhausted")
                removed = 0
                for v in combo:
                    removed |= 1 << v
                comps = _components_masks(n, nbr_masks, removed)
                sizes = [c.bit_count() for c in comps]
                chosen = _split_components(sizes, n)
                if chosen is None:
                    continue
                a_size = sum(sizes[i] for i in chosen)
                maxside = max(a_size, sum(sizes) - a_size)
                if best is None or maxside < best[0]:
                    best = (maxside, combo, comps, chosen)
            if best is not None:
                _, combo, comps, chosen = best
                side_a, side_b = [], []
                for i, c in enumerate(comps):
                    (side_a if i in chosen else side_b).extend(_mask_vertices(c))
                return SeparatorResult(
                    tuple(combo), tuple(sorted(side_a)), tuple(sorted(side_b))
                )
        raise NoBalancedLevel("no balanced separator exists")

    if mode != "bfs_level":
        raise ValueError(f"unknown separator mode {mode!r}")

    ecc_root, best_e = 0, -1
    for v in range(g.n):
        e = max(bfs_distances(g, v))
        if e > best_e:
            ecc_root, best_e = v, e
    dist = bfs_distances(g, ecc_root)
    levels = [[] for _ in range(best_e + 1)]
    for v in range(g.n):
        levels[dist[v]].append(v)
    prefix = [0]
    for lv in levels:
        prefix.append(prefix[-1] + len(lv))

    def balanced(a, b):
        return 3 * a <= 2 * g.n and 3 * b <= 2 * g.n

    best = None  # (|S|, maxside, index)
    for i, lv in enumerate(levels):
        a, b = prefix[i], g.n - prefix[i + 1]
        if balanced(a, b):
            cand = (len(lv), max(a, b), i)
            if best is None or cand < best:
                best = cand
    if best is not None:
        i = best[2]
        return SeparatorResult(
            tuple(sorted(levels[i])),
            tuple(sorted(v for lv in levels[:i] for v in lv)),
            tuple(sorted(v for lv in levels[i + 1 :] for v in lv)),
        )
    for i in range(len(levels) - 1):
        a, b = prefix[i], g.n - prefix[i + 2]
        if balanced(a, b):
            return SeparatorResult(
                tuple(sorted(levels[i] + levels[i + 1])),
                tuple(sorted(v for lv in levels[:i] for v in lv)),
                tuple(sorted(v for lv in levels[i + 2 :] for v in lv)),
            )
    raise NoBalancedLevel("no one- or two-level separator balances")


# ---------------------------------------------------------------------------
# separator sweep


class SeparatorSweepPolicy(CopPolicy):
    """Stationed cops hold balanced separators of the robber's territory;
    each phase walks a fresh team onto a separator of the current territory,
    multiplying it by at most 2/3. Cops never leave a separator once placed."""

    def __init__(self, g: Graph, k: int, *, sep_mode: str = "bfs_level"):
        self.g = g
        self.k = k
        self.sep_mode = sep_mode
        self.stationed: dict[int, int] = {}
        self.walkers: list[dict] = []
        self.used = 0
        self.metadata = {"policy": "separator-sweep", "phases": []}

    def placement(self, g: Graph, k: int):
        if k != self.k:
            raise ValueError("policy built for a different k")
        s0 = separator(g, self.sep_mode).separator
        if len(s0) > k:
            raise TeamBudgetExceeded(len(s0), k)
        met = metrics(g)
        centre = min(v for v in range(g.n) if met.eccentricities[v] == met.radius)
        pos = list(s0) + [centre] * (k - len(s0))
        self.stationed = {i: s0[i] for i in range(len(s0))}
        self.used = len(s0)
        self.metadata["phases"].append({"territory": g.n, "separator": len(s0)})
        return tuple(pos)

    def _plan(self, robber: int):
        g = self.g
        walls = set(self.stationed.values())
        territory = component_of(g, robber, blocked=walls)
        sub_g, _, to_global = g.induced(sorted(territory))
        sep = separator(sub_g, self.sep_mode).separator
        targets = sorted(to_global[v] for v in sep)
        if self.used + len(targets) > self.k:
            raise TeamBudgetExceeded(self.used + len(targets), self.k)
        self.metadata["phases"].append(
            {"territory": len(territory), "separator": len(targets)}
        )
        for j, t in enumerate(targets):
            self.walkers.append(
                {"cop": self.used + j, "target": t, "dist": bfs_distances(g, t)}
            )
        self.used += len(targets)

    def move(self, g: Graph, cops, robber: int, rnd: int):
        if not self.walkers:
            self._plan(robber)
        out = list(cops)
        arrived = []
        for w in self.walkers:
            c = w["cop"]
            pos = cops[c]
            if pos != w["target"]:
                d = w["dist"]
                pos = min(u for u in g.adj[pos] if d[u] == d[pos] - 1)
                out[c] = pos
            if pos == w["target"]:
                arrived.append(w)
        for w in arrived:
            self.stationed[w["cop"]] = w["target"]
            self.walkers.remove(w)
        return tuple(out)


def separator_sweep_policy(g: Graph, k: int, fast_robber: bool = False,
                           *, sep_mode: str = "bfs_level") -> SeparatorSweepPolicy:
    # fast_robber changes only the referee's legality rule; the policy's
    # bookkeeping is already per-phase and speed-agnostic.
    return SeparatorSweepPolicy(g, k, sep_mode=sep_mode)


# ---------------------------------------------------------------------------
# path guarding


@dataclass
class GuardedPath:
    """An isometric path being guarded via its retract shadow.

    home_dist[u] is the distance from path[0] to u inside the subgraph the
    path is isometric in (MAXDIST outside it); the shadow of a robber at u is
    the path vertex at index min(home_dist[u], len(path)-1).
    """

    path: tuple
    home_dist: tuple
    cop: int
    status: str = "chase"  # "chase" until the cop reaches the shadow, then "guard"
    index: int = 0  # cop's current position as a path index
    note: dict = field(default_factory=dict)

    def shadow_index(self, robber: int) -> int:
        return min(self.home_dist[robber], len(self.path) - 1)

    def shadow(self, robber: int) -> int:
        return self.path[self.shadow_index(robber)]


def guard_path_moves(guard: GuardedPath, robber: int) -> int:
    """Next vertex for the guarding cop. Chasing steps along the path toward
    the shadow and flips to guarding on contact; guarding mirrors the shadow
    (always a legal step: the shadow moves at most one path vertex per
    robber move)."""
    j = guard.shadow_index(robber)
    if guard.status == "chase" and guard.index == j:
        guard.status = "guard"
    if guard.status == "guard":
        guard.index = j
        return guard.path[j]
    guard.index += 1 if j > guard.index else -1
    return guard.path[guard.index]


def _restricted_dist(g: Graph, allowed, source: int, forbidden_edge=None):
    dist = [MAXDIST] * g.n
    if source not in allowed:
        return dist
    dist[source] = 0
    q = deque([source])
    fe = frozenset(forbidden_edge) if forbidden_edge else None
    while q:
        v = q.popleft()
        for u in g.adj[v]:
            if u not in allowed or dist[u] != MAXDIST:
                continue
            if fe and {u, v} == fe:
                continue
            dist[u] = dist[v] + 1
            q.append(u)
    return dist


def _restricted_path(g: Graph, allowed, src: int, dst: int, forbidden_edge=None):
    dist = _restricted_dist(g, allowed, src, forbidden_edge)
    if dist[dst] == MAXDIST:
        raise DisconnectedGraph(f"no path {src} -> {dst} in restricted graph")
    fe = frozenset(forbidden_edge) if forbidden_edge else None
    path = [dst]
    while path[-1] != src:
        v = path[-1]
        path.append(
            min(
                u
                for u in g.adj[v]
                if u in allowed
                and dist[u] == dist[v] - 1
                and not (fe and {u, v} == fe)
            )
        )
    path.reverse()
    return path


# ---------------------------------------------------------------------------
# three-cop phase machine


class ThreeCopPlanarPolicy(CopPolicy):
    """Guard a diametral shortest path, then repeatedly wall off the robber's
    component with a new guarded path, releasing every guard whose path no
    longer bounds the territory.

    Phase selection (att = path vertices with a neighbour in territory Y):

    * one attachment vertex overall: cut-vertex case; guard a farthest
      shortest path from it inside Y.
    * one guarded wall: connect the neighbours of its first and last
      attachments by a shortest path inside Y.
    * two walls with a single attachment each: connect those two attachment
      vertices through Y, ignoring any direct edge between them; both old
      guards release afterwards.
    * two walls, one with two or more attachments: split its span with a
      shortest path inside Y; if afterwards neither old wall can release,
      graft the split wall's outer segments onto the new path (re-verifying
      isometry, recomputing the path when the check fails) and re-chase.
    """

    def __init__(self, g: Graph):
        if not g.is_connected():
            raise DisconnectedGraph("three-cop policy needs a connected graph")
        self.g = g
        met = metrics(g)
        self.diam = met.diameter
        pair = None
        for u in range(g.n):
            du = bfs_distances(g, u)
            for v in range(g.n):
                if du[v] == self.diam:
                    pair = (u, v)
                    break
            if pair:
                break
        self.init_path = tuple(
            _restricted_path(g, set(range(g.n)), pair[0], pair[1])
        )
        self.guards: list[GuardedPath] = []
        self.pending: dict | None = None
        self.free: list[int] = []
        self.last_progress = 0
        self.prev_territory = g.n
        self.metadata = {"policy": "three-cop", "phases": []}
        self._plan_info: dict | None = None

    def _auto_free(self, robber: int):
        """Release guards whose removal leaves the robber's component
        unchanged; returns the resulting territory (None if the robber is
        standing on a wall)."""
        while True:
            guarding = [gd for gd in self.guards if gd.status == "guard"]
            walls = set()
            for gd in guarding:
                walls.update(gd.path)
            if robber in walls:
                return None
            territory = component_of(self.g, robber, blocked=walls)
            dropped = False
            for gd in guarding:
                rest = set()
                for other in guarding:
                    if other is not gd:
                        rest.update(other.path)
                if robber in rest:
                    continue
                if component_of(self.g, robber, blocked=rest) == territory:
                    self.guards.remove(gd)
                    self.free.append(gd.cop)
                    self.free.sort()
                    dropped = True
                    break
            if not dropped:
                return territory

    def _try_extension(self, robber: int, territory):
        info = self._plan_info
        if not info or info.get("case") != "II-split":
            return False
        old_guard, new_guard = info["split_guard"], info["new_guard"]
        if old_guard not in self.guards or new_guard not in self.guards:
            return False
        p1 = list(old_guard.path)
        i1, i2 = p1.index(info["v1"]), p1.index(info["v2"])
        if i1 > i2:
            i1, i2 = i2, i1
        mid = list(new_guard.path)
        if mid[0] != info["u1"]:
            mid.reverse()
        pprime = p1[: i1 + 1] + mid + p1[i2:]
        if len(set(pprime)) != len(pprime):
            return False
        for a, b in zip(pprime, pprime[1:]):
            if b not in self.g.adj[a]:
                return False
        allowed = set(territory) | set(pprime)
        dist = _restricted_dist(self.g, allowed, pprime[0])
        if dist[pprime[-1]] != len(pprime) - 1:
            # asserted shortest path is not isometric here; take a real one
            pprime = _restricted_path(self.g, allowed, pprime[0], pprime[-1])
            dist = _restricted_dist(self.g, allowed, pprime[0])
            new_guard.note["extension_recomputed"] = True
        cop_v = new_guard.path[new_guard.index]
        if cop_v not in pprime:
            return False
        new_guard.path = tuple(pprime)
        new_guard.home_dist = tuple(dist)
        new_guard.index = pprime.index(cop_v)
        new_guard.status = "chase"
        new_guard.note["extended"] = True
        return True

    def _settle(self, robber: int, rnd: int):
        territory = self._auto_free(robber)
        if (
            territory is not None
            and sum(gd.status == "guard" for gd in self.guards) > 2
        ):
            if self._try_extension(robber, territory):
                territory = self._auto_free(robber)
        size = len(territory) if territory is not None else 0
        shrink = self.prev_territory - size
        case = self._plan_info["case"] if self._plan_info else "rechase"
        self.metadata["phases"].append(
            {"case": case, "shrink": shrink, "round": rnd, "territory": size}
        )
        if shrink > 0 or territory is None:
            self.last_progress = rnd
        self.prev_territory = size
        self._plan_info = None

    def _plan(self, robber: int, cops):
        walls = set()
        for gd in self.guards:
            walls.update(gd.path)
        if robber in walls or not self.free:
            return
        g = self.g
        territory = component_of(g, robber, blocked=walls)
        guarding = [gd for gd in self.guards if gd.status == "guard"]
        atts = {id(gd): [v for v in gd.path if any(u in territory for u in g.adj[v])]
                for gd in guarding}
        all_atts = sorted({v for a in atts.values() for v in a})
        if not all_atts:
            # nothing bounds the territory; should not happen after init
            return
        info: dict = {}

        if len(all_atts) == 1:
            v = all_atts[0]
            allowed = set(territory) | {v}
            dist = _restricted_dist(g, allowed, v)
            far = max(dist[u] for u in allowed)
            u = min(w for w in allowed if dist[w] == far)
            newpath = _restricted_path(g, allowed, u, v)
            case, home_allowed = "III", allowed
        elif len(guarding) == 1:
            gd = guarding[0]
            att = atts[id(gd)]
            v1, v2 = att[0], att[-1]
            u1 = min(u for u in g.adj[v1] if u in territory)
            u2 = min(u for u in g.adj[v2] if u in territory)
            newpath = [u1] if u1 == u2 else _restricted_path(g, set(territory), u1, u2)
            case, home_allowed = "I", set(territory)
        else:
            a1, a2 = atts[id(guarding[0])], atts[id(guarding[1])]
            if len(a1) == 1 and len(a2) == 1:
                v1, v2 = a1[0], a2[0]
                allowed = set(territory) | {v1, v2}
                newpath = _restricted_path(g, allowed, v1, v2, forbidden_edge=(v1, v2))
                case, home_allowed = "II-join", allowed
            else:
                split = guarding[0] if len(a1) >= 2 else guarding[1]
                att = atts[id(split)]
                v1, v2 = att[0], att[-1]
                u1 = min(u for u in g.adj[v1] if u in territory)
                u2 = min(u for u in g.adj[v2] if u in territory)
                newpath = [u1] if u1 == u2 else _restricted_path(g, set(territory), u1, u2)
                case, home_allowed = "II-split", set(territory)
                info.update({"split_guard": split, "v1": v1, "v2": v2, "u1": newpath[0]})

        cop = self.free.pop(0)
        dist = _restricted_dist(g, set(home_allowed) | set(newpath), newpath[0])
        guard = GuardedPath(
            path=tuple(newpath),
            home_dist=tuple(dist),
            cop=cop,
            status="chase",
            index=len(newpath) // 2,
        )
        centre = newpath[len(newpath) // 2]
        route = [] if cops[cop] == centre else _restricted_path(
            g, set(range(g.n)), cops[cop], centre
        )[1:]
        self.pending = {"guard": guard, "route": route}
        info.update({"case": case, "new_guard": guard})
        self._plan_info = info

    def placement(self, g: Graph, k: int):
        if k != 3:
            raise ValueError("three-cop policy needs exactly k = 3")
        centre = self.init_path[len(self.init_path) // 2]
        dist0 = _restricted_dist(g, set(range(g.n)), self.init_path[0])
        guard = GuardedPath(
            path=self.init_path,
            home_dist=tuple(dist0),
            cop=0,
            status="chase",
            index=len(self.init_path) // 2,
        )
        self.pending = {"guard": guard, "route": []}
        self._plan_info = {"case": "init", "new_guard": guard}
        self.free = [1, 2]
        self.last_progress = 0
        self.prev_territory = g.n
        return (centre, centre, centre)

    def move(self, g: Graph, cops, robber: int, rnd: int):
        if rnd - self.last_progress > self.diam + g.n + 2:
            raise ProgressStall(
                f"territory stuck for {rnd - self.last_progress} rounds"
            )
        out = list(cops)
        moved = set()
        settled = False

        if self.pending is not None:
            pd = self.pending
            cop = pd["guard"].cop
            if pd["route"]:
                out[cop] = pd["route"].pop(0)
            else:
                gd = pd["guard"]
                out[cop] = guard_path_moves(gd, robber)
                if gd.status == "guard":
                    self.guards.append(gd)
                    self.pending = None
                    settled = True
            moved.add(cop)

        for gd in list(self.guards):
            if gd.cop in moved:
                continue
            was = gd.status
            out[gd.cop] = guard_path_moves(gd, robber)
            moved.add(gd.cop)
            if was == "chase" and gd.status == "guard":
                settled = True

        if settled:
            self._settle(robber, rnd)
        if self.pending is None and not any(gd.status == "chase" for gd in self.guards):
            self._plan(robber, out)
        return tuple(out)


def three_cop_planar_policy(g: Graph) -> ThreeCopPlanarPolicy:
    return ThreeCopPlanarPolicy(g)
