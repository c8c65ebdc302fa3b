"""Maximum bipartite matching (Hopcroft-Karp) with Hall-violation witnesses.

Left vertices are 0..n_left-1 with adjacency lists of right ids. The
implementation is deterministic: vertices are scanned in ascending order and
no set iteration feeds a tie-sensitive choice.
"""

from __future__ import annotations

import sys
from collections import deque


def hopcroft_karp(adj, n_right: int):
    """Return (size, pair_left, pair_right); unmatched entries are -1."""
    n_left = len(adj)
    pair_left = [-1] * n_left
    pair_right = [-1] * n_right
    dist = [-1] * n_left

    def bfs():
        q = deque()
        found = False
        for u in range(n_left):
            if pair_left[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = -1
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = pair_right[v]
                if w == -1:
                    found = True
                elif dist[w] == -1:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u):
        for v in adj[u]:
            w = pair_right[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                pair_left[u] = v
                pair_right[v] = u
                return True
        dist[u] = -1
        return False

    # Alternating paths are short (phased BFS layers), but the recursion can
    # still chain through many matched pairs on dense instances.
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, n_left + n_right + 1000))
    size = 0
    try:
        while bfs():
            for u in range(n_left):
                if pair_left[u] == -1 and dfs(u):
                    size += 1
    finally:
        sys.setrecursionlimit(old_limit)
    return size, pair_left, pair_right


def hall_witness(adj, pair_left, pair_right):
    """Deficient left set W with |N(W)| < |W|, from a maximum matching.

    Standard alternating-reachability (Koenig) construction: W is every left
    vertex reachable from an unmatched left vertex by alternating paths.
    Returns (W_sorted, neighbourhood_sorted); empty W means the matching
    saturates the left side.
    """
    n_left = len(adj)
    if all(p != -1 for p in pair_left):
        return [], []
    reach_left = [False] * n_left
    reach_right = set()
    q = deque()
    for u in range(n_left):
        if pair_left[u] == -1:
            reach_left[u] = True
            q.append(u)
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in reach_right:
                reach_right.add(v)
                w = pair_right[v]
                if w != -1 and not reach_left[w]:
                    reach_left[w] = True
                    q.append(w)
    W = [u for u in range(n_left) if reach_left[u]]
    return W, sorted(reach_right)
