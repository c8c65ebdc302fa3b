import itertools

from hypothesis import given
from hypothesis import strategies as st

from copsrobbers.matching import hall_witness, hopcroft_karp


def brute_max_matching(adj, n_right):
    """Try all injective assignments; only for tiny instances."""
    n_left = len(adj)
    best = 0
    for rights in itertools.product(*(a + [None] for a in adj)):
        used = [r for r in rights if r is not None]
        if len(set(used)) == len(used):
            best = max(best, len(used))
    return best


def test_perfect_matching_triangle_structure():
    adj = [[0, 1], [0, 2], [1, 2]]
    size, pair_left, _ = hopcroft_karp(adj, 3)
    assert size == 3
    assert sorted(pair_left) == [0, 1, 2]


def test_deficient_side():
    adj = [[0], [0], [0, 1]]
    size, pair_left, pair_right = hopcroft_karp(adj, 2)
    assert size == 2
    W, NW = hall_witness(adj, pair_left, pair_right)
    assert len(NW) < len(W)
    # the witness is a genuine Hall violation
    union = set()
    for u in W:
        union.update(adj[u])
    assert union == set(NW)


def test_empty_adjacency():
    size, pair_left, _ = hopcroft_karp([[], []], 3)
    assert size == 0
    W, NW = hall_witness([[], []], pair_left, [-1, -1, -1])
    assert W == [0, 1] and NW == []


@given(st.integers(0, 500))
def test_matches_brute_force(seed):
    import random

    rng = random.Random(seed)
    n_left, n_right = rng.randint(1, 5), rng.randint(1, 5)
    adj = [
        sorted({rng.randrange(n_right) for _ in range(rng.randint(0, n_right))})
        for _ in range(n_left)
    ]
    size, pair_left, pair_right = hopcroft_karp([list(a) for a in adj], n_right)
    assert size == brute_max_matching([list(a) for a in adj], n_right)
    # matching consistency
    for u, v in enumerate(pair_left):
        if v != -1:
            assert v in adj[u] and pair_right[v] == u
    W, NW = hall_witness([list(a) for a in adj], pair_left, pair_right)
    if size == n_left:
        assert W == []
    else:
        assert len(NW) < len(W)
        union = set()
        for u in W:
            union.update(adj[u])
        assert union == set(NW)
