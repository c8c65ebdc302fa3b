"""Undirected simple graphs with reflexive movement semantics, plus exact
metric machinery: BFS distances, radius/diameter, metric k-centers,
domination numbers, and retract maps.

Reflexivity (players may pass) is a movement rule, never stored loops: the
closed neighbourhood N[v] = {v} | adj(v) is what game code consumes.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from collections import deque
from dataclasses import dataclass

from .errors import DisconnectedGraph, NotIsometric, SearchSpaceTooLarge

# Distances are 32-bit counts; MAXDIST is the dedicated unreachable sentinel.
MAXDIST = 2**31 - 1

SUBSET_CAP = 5_000_000


class Graph:
    """Immutable undirected simple graph on vertex ids 0..n-1.

    Adjacency lists are ascending and deduplicated; symmetry is enforced at
    construction. Instances are safe for concurrent shared reads.
    """

    __slots__ = ("n", "adj", "_closed", "m")

    def __init__(self, n: int, adjacency):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(adjacency) != n:
            raise ValueError("adjacency must have one entry per vertex")
        adj = []
        for v, nbrs in enumerate(adjacency):
            ns = tuple(sorted(nbrs))
            for u in ns:
                if not 0 <= u < n:
                    raise ValueError(f"neighbour {u} of {v} out of range")
                if u == v:
                    raise ValueError(f"self-loop stored at {v}; reflexivity is implicit")
            if any(ns[i] == ns[i + 1] for i in range(len(ns) - 1)):
                raise ValueError(f"duplicate neighbour entry at {v}")
            adj.append(ns)
        directed = set()
        for v in range(n):
            for u in adj[v]:
                directed.add((v, u))
        for v, u in directed:
            if (u, v) not in directed:
                raise ValueError(f"asymmetric adjacency: {v}->{u} without {u}->{v}")
        self.n = n
        self.adj = tuple(adj)
        self.m = sum(len(a) for a in adj) // 2
        self._closed = None

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop edge ({u},{v})")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, adj)

    @property
    def closed(self):
        """Closed neighbourhoods N[v], ascending, computed once."""
        if self._closed is None:
            self._closed = tuple(
                tuple(sorted((v, *self.adj[v]))) for v in range(self.n)
            )
        return self._closed

    def edges(self):
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return bfs_distances(self, 0).count(MAXDIST) == 0

    def induced(self, vertices):
        """Induced subgraph on `vertices` plus the local/global id maps."""
        to_global = tuple(sorted(vertices))
        to_local = {g: i for i, g in enumerate(to_global)}
        adj = [
            [to_local[u] for u in self.adj[g] if u in to_local] for g in to_global
        ]
        return Graph(len(to_global), adj), to_local, to_global

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def graph_digest(g: Graph) -> bytes:
    """SHA-256 of the canonical edge list, used to key cached solver tables."""
    text = f"{g.n}\n" + "\n".join(f"{u} {v}" for u, v in g.edges())
    return hashlib.sha256(text.encode()).digest()


def bfs_distances(g: Graph, source: int) -> list[int]:
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range")
    dist = [MAXDIST] * g.n
    dist[source] = 0
    q = deque([source])
    while q:
        v = q.popleft()
        d = dist[v] + 1
        for u in g.adj[v]:
            if dist[u] == MAXDIST:
                dist[u] = d
                q.append(u)
    return dist


def bfs_multi(g: Graph, sources) -> list[int]:
    """Distance to the nearest of several sources (MAXDIST if none given)."""
    dist = [MAXDIST] * g.n
    q = deque()
    for s in sources:
        if dist[s] != 0:
            dist[s] = 0
            q.append(s)
    while q:
        v = q.popleft()
        d = dist[v] + 1
        for u in g.adj[v]:
            if dist[u] == MAXDIST:
                dist[u] = d
                q.append(u)
    return dist


def bfs_parents(g: Graph, source: int):
    """BFS tree (dist, parent) from source; parents pick the smallest id."""
    dist = [MAXDIST] * g.n
    parent = [-1] * g.n
    dist[source] = 0
    q = deque([source])
    while q:
        v = q.popleft()
        d = dist[v] + 1
        for u in g.adj[v]:
            if dist[u] == MAXDIST:
                dist[u] = d
                parent[u] = v
                q.append(u)
    return dist, parent


def shortest_path(g: Graph, src: int, dst: int) -> list[int]:
    """One shortest src-dst path, deterministic (smallest-id parents)."""
    dist, parent = bfs_parents(g, src)
    if dist[dst] == MAXDIST:
        raise DisconnectedGraph(f"no path {src} -> {dst}")
    path = [dst]
    while path[-1] != src:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def all_pairs_distances(g: Graph) -> list[list[int]]:
    return [bfs_distances(g, v) for v in range(g.n)]


def component_of(g: Graph, start: int, blocked=frozenset()) -> set[int]:
    """Vertices reachable from start in g minus the blocked vertex set."""
    if start in blocked:
        return set()
    seen = {start}
    q = deque([start])
    while q:
        v = q.popleft()
        for u in g.adj[v]:
            if u not in seen and u not in blocked:
                seen.add(u)
                q.append(u)
    return seen


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and g.is_connected()


@dataclass(frozen=True)
class Metrics:
    radius: int
    diameter: int
    eccentricities: tuple[int, ...]


def metrics(g: Graph) -> Metrics:
    if g.n == 0:
        raise DisconnectedGraph("empty graph has no metrics")
    ecc = []
    for v in range(g.n):
        dist = bfs_distances(g, v)
        e = max(dist)
        if e == MAXDIST:
            raise DisconnectedGraph("metrics require a connected graph")
        ecc.append(e)
    return Metrics(min(ecc), max(ecc), tuple(ecc))


@dataclass(frozen=True)
class KCenterResult:
    centers: tuple[int, ...]
    radius: int


def k_center(g: Graph, k: int, mode: str = "exact", *, subset_cap: int = SUBSET_CAP) -> KCenterResult:
    """Metric k-center of a connected graph.

    exact: exhaustive over k-subsets (lexicographic order, early cut-off
    against the incumbent radius), so ties resolve to the lexicographically
    smallest center set. greedy: farthest-point seeding from vertex 0, a
    2-approximation.
    """
    if not 1 <= k:
        raise ValueError("k must be at least 1")
    if g.n == 0:
        raise DisconnectedGraph("empty graph")
    if k >= g.n:
        return KCenterResult(tuple(range(g.n)), 0)
    dist = all_pairs_distances(g)
    if any(MAXDIST in row for row in dist):
        raise DisconnectedGraph("k-center requires a connected graph")

    if mode == "greedy":
        centers = [0]
        while len(centers) < k:
            best_v, best_d = -1, -1
            for v in range(g.n):
                dv = min(dist[c][v] for c in centers)
                if dv > best_d:
                    best_v, best_d = v, dv
            centers.append(best_v)
        radius = max(min(dist[c][v] for c in centers) for v in range(g.n))
        return KCenterResult(tuple(sorted(centers)), radius)

    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    if math.comb(g.n, k) > subset_cap:
        raise SearchSpaceTooLarge(
            f"C({g.n},{k}) = {math.comb(g.n, k)} exceeds cap {subset_cap}"
        )
    best_r = MAXDIST
    best = None
    for combo in itertools.combinations(range(g.n), k):
        rows = [dist[c] for c in combo]
        r = 0
        for v in range(g.n):
            dv = min(row[v] for row in rows)
            if dv > r:
                r = dv
                if r >= best_r:
                    break
        else:
            best_r = r
            best = combo
    return KCenterResult(best, best_r)


def domination_number(g: Graph, *, max_n: int = 40) -> int:
    """Exact domination number by branch and bound over closed neighbourhoods."""
    if g.n > max_n:
        raise SearchSpaceTooLarge(f"n={g.n} exceeds domination cap {max_n}")
    if g.n == 0:
        return 0
    n = g.n
    masks = []
    for v in range(n):
        m = 1 << v
        for u in g.adj[v]:
            m |= 1 << u
        masks.append(m)
    full = (1 << n) - 1

    # greedy cover as the initial incumbent
    covered, size = 0, 0
    while covered != full:
        best = max(range(n), key=lambda v: ((masks[v] | covered).bit_count(), -v))
        covered |= masks[best]
        size += 1
    best_size = size
    max_gain = max(m.bit_count() for m in masks)

    def search(covered, size):
        nonlocal best_size
        if covered == full:
            best_size = min(best_size, size)
            return
        remaining = (full & ~covered).bit_count()
        if size + (remaining + max_gain - 1) // max_gain >= best_size:
            return
        v = (full & ~covered).bit_length() - 1  # an uncovered vertex
        # only vertices in N[v] can cover v
        for u in sorted((v, *g.adj[v])):
            search(covered | masks[u], size + 1)

    search(0, 0)
    return best_size


@dataclass(frozen=True)
class RetractMap:
    """A homomorphism of the whole graph onto an induced subgraph (its image)
    that fixes the image pointwise."""

    image: frozenset
    mapping: tuple

    def apply(self, v: int) -> int:
        return self.mapping[v]


def verify_retract(g: Graph, r: RetractMap):
    """Check the retract invariants; returns (ok, first_violation).

    Violations: ("identity", v) when v is in the image but not fixed,
    ("range", v) when the map leaves the image, ("edge", (u, v)) when an
    edge maps to a non-edge with distinct endpoints.
    """
    if len(r.mapping) != g.n:
        return False, ("malformed", None)
    for v in range(g.n):
        fv = r.mapping[v]
        if v in r.image and fv != v:
            return False, ("identity", v)
        if fv not in r.image:
            return False, ("range", v)
    for u, v in g.edges():
        fu, fv = r.mapping[u], r.mapping[v]
        if fu != fv and fu not in g.adj[fv]:
            return False, ("edge", (u, v))
    return True, None


def path_retract(g: Graph, path, anchor: int) -> RetractMap:
    """Retract of g onto an isometric path, clamping by distance from anchor.

    Each vertex u maps to the path vertex at distance min(dist(u, anchor), L)
    from the anchor, L being the path length in edges.
    """
    path = list(path)
    if not path:
        raise NotIsometric("empty path")
    if anchor == path[-1]:
        path.reverse()
    if anchor != path[0]:
        raise ValueError("anchor must be a path endpoint")
    if len(set(path)) != len(path):
        raise NotIsometric("path repeats a vertex")
    for a, b in zip(path, path[1:]):
        if b not in g.adj[a]:
            raise NotIsometric(f"({a},{b}) is not an edge")
    dist = bfs_distances(g, anchor)
    L = len(path) - 1
    if dist[path[-1]] != L:
        raise NotIsometric(
            f"path has length {L} but dist({anchor},{path[-1]}) = {dist[path[-1]]}"
        )
    mapping = tuple(path[min(dist[u], L)] for u in range(g.n))
    return RetractMap(frozenset(path), mapping)
