"""Shared fixtures, generators and brute-force oracles for the test suite."""

import itertools
import math

import numpy as np

from irate.system import Edge, SyncPairSet, TransitionSystem, clean

LOG2_PHI = math.log2((1 + math.sqrt(5)) / 2)


def ts(states, enter, exit, edges):
    return TransitionSystem(tuple(states), enter, exit, tuple(Edge(*e) for e in edges))


def fib():
    return ts("ab", "a", "a", [("a", "a"), ("a", "b"), ("b", "a")])


def complete2():
    return ts("ab", "a", "b", [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")])


def chain(n=3, prefix="c"):
    st = [f"{prefix}{i}" for i in range(n)]
    return ts(st, st[0], st[-1], [(st[i], st[i + 1]) for i in range(n - 1)])


def pendant_fib():
    """Fibonacci core {a, b} between an entry pendant e->a and exit pendant a->x."""
    return ts(["e", "a", "b", "x"], "e", "x",
              [("e", "a", "i"), ("a", "a", "x"), ("a", "b", "y"), ("b", "a", "z"),
               ("a", "x", "o")])


def sigma_star(symbols=("a", "b")):
    return ts(["q"], "q", "q", [("q", "q", s) for s in symbols])


def random_system(rng, n_lo=2, n_hi=8, permute=False):
    n = int(rng.integers(n_lo, n_hi + 1))
    p = rng.uniform(0.15, 0.5)
    order = rng.permutation(n) if permute else range(n)
    st = tuple(f"s{i}" for i in order)
    edges = [(st[i], st[j]) for i in range(n) for j in range(n) if rng.random() < p]
    return ts(st, st[0], st[int(rng.integers(n))], edges)


def random_cleaned_systems(seed, count, n_hi=8):
    """First ``count`` non-empty cleaned random systems of the seeded stream."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        c = clean(random_system(rng, n_hi=n_hi))
        if not c.empty:
            out.append(c)
    return out


def all_walk_counts(M, n_max):
    """Enter->exit walk counts by explicit enumeration (small n only)."""
    counts = [0] * (n_max + 1)

    def go(s, n):
        if s == M.exit:
            counts[n] += 1
        if n == n_max:
            return
        for e in M.edges:
            if e.src == s:
                go(e.dst, n + 1)

    if not M.empty:
        go(M.enter, 0)
    return counts


def _is_path_prefix(states, M, complete):
    if not states:
        return not complete
    if states[0] != M.enter:
        return False
    moves = {(e.src, e.dst) for e in M.edges}
    if any((a, b) not in moves for a, b in zip(states, states[1:])):
        return False
    return states[-1] == M.exit if complete else True


def sync_word_counts_bruteforce(M1, M2, pairs, n_max):
    """Count words over Q̂1 ∪ Π ∪ Q̂2 by length whose two projections are
    enter->exit paths (as state sequences) of M1 and of M2.

    Projection onto M1 drops unpaired M2 states and maps a pair to its first
    component; symmetrically for M2.
    """
    syms = [(p, None) for p in M1.states if p not in pairs.first]
    syms += list(pairs)
    syms += [(None, q) for q in M2.states if q not in pairs.second]
    counts = [0] * (n_max + 1)

    def proj(word, side):
        return [s[side] for s in word if s[side] is not None]

    def go(word):
        p1, p2 = proj(word, 0), proj(word, 1)
        if not (_prefix_ok(p1, M1) and _prefix_ok(p2, M2)):
            return
        if p1 and p2 and _is_path_prefix(p1, M1, True) and _is_path_prefix(p2, M2, True):
            counts[len(word)] += 1
        if len(word) == n_max:
            return
        for s in syms:
            word.append(s)
            go(word)
            word.pop()

    go([])
    return counts


def _prefix_ok(states, M):
    return not states or _is_path_prefix(states, M, False)


def small_pair_sets(M1, M2, max_pairs=2, limit=None):
    """Pair sets of size <= max_pairs, in a fixed order."""
    cells = list(itertools.product(M1.states, M2.states))
    out = [SyncPairSet()]
    for k in range(1, max_pairs + 1):
        for combo in itertools.combinations(cells, k):
            firsts = {a for a, _ in combo}
            seconds = {b for _, b in combo}
            if len(firsts) == k and len(seconds) == k:
                out.append(SyncPairSet(frozenset(combo)))
    return out if limit is None else out[:limit]
