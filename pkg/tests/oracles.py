"""Slow, obviously-correct reference implementations used by the tests."""

from itertools import product


def naive_covered(symbols, n, k):
    """All unordered pairs {a, b}, a != b, that occur within distance k (O(m^2))."""
    covered = set()
    m = len(symbols)
    for i in range(m):
        for j in range(i + 1, m):
            if j - i <= k and symbols[i] != symbols[j]:
                a, b = symbols[i], symbols[j]
                covered.add((min(a, b), max(a, b)))
    return covered


def naive_is_k_radius(symbols, n, k):
    return len(naive_covered(symbols, n, k)) == n * (n - 1) // 2 and set(symbols) >= set(range(n))


def brute_force_f(n, k, max_len=20):
    """Shortest k-radius length by enumerating every sequence, shortest first."""
    for length in range(1, max_len + 1):
        for cand in product(range(n), repeat=length):
            if naive_is_k_radius(cand, n, k):
                return length
    return None


def naive_min_gap(symbols, a, b):
    best = None
    for i, x in enumerate(symbols):
        for j, y in enumerate(symbols):
            if x == a and y == b:
                d = abs(i - j)
                best = d if best is None else min(best, d)
    return best
