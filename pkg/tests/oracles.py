"""Independent reference implementations used only as test oracles.

These deliberately use different algorithm families from the package code:
global relaxation sweeps instead of frontier retrograde analysis, and plain
subset enumeration instead of pruned or branch-and-bound search.
"""

import itertools

INF = float("inf")


def naive_game_values(g, k):
    """Game values by fixed-point relaxation over the entire state space.

    Starts every non-capture state at infinity and sweeps until stable; the
    decreasing iteration converges to the true optimal values.
    """
    closed = g.closed
    configs = list(itertools.combinations_with_replacement(range(g.n), k))
    vc, vr = {}, {}
    for C in configs:
        occ = set(C)
        for r in range(g.n):
            base = 0 if r in occ else INF
            vc[(C, r)] = base
            vr[(C, r)] = base
    moves = {}
    for C in configs:
        ms = set()
        for prod in itertools.product(*(closed[c] for c in C)):
            ms.add(tuple(sorted(prod)))
        moves[C] = sorted(ms)
    changed = True
    while changed:
        changed = False
        for C in configs:
            occ = set(C)
            for r in range(g.n):
                if r in occ:
                    continue
                worst = max(vc[(C, rp)] for rp in closed[r])
                if worst != vr[(C, r)]:
                    vr[(C, r)] = worst
                    changed = True
                best = min(vr[(C2, r)] for C2 in moves[C])
                best = best + 1 if best != INF else INF
                if best != vc[(C, r)]:
                    vc[(C, r)] = best
                    changed = True
    return vc, vr


def naive_capture_time(g, k):
    vc, _ = naive_game_values(g, k)
    configs = sorted({C for C, _ in vc})
    best = INF
    for C in configs:
        worst = max(vc[(C, r)] for r in range(g.n))
        best = min(best, worst)
    return best


def brute_force_k_center(g, k, dist):
    """Minimum covering radius over all k-subsets, plus one witness set."""
    best_r, best = INF, None
    for combo in itertools.combinations(range(g.n), min(k, g.n)):
        r = max(min(dist[c][v] for c in combo) for v in range(g.n))
        if r < best_r:
            best_r, best = r, combo
    return best_r, best


def brute_force_domination(g):
    for size in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            covered = set()
            for v in combo:
                covered.add(v)
                covered.update(g.adj[v])
            if len(covered) == g.n:
                return size
    return g.n


def has_cycle(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return True
        parent[ru] = rv
    return False
