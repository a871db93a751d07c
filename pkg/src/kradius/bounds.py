"""Known bounds on f_k(n), the gcd-sum identity, and an exact branch-and-bound search.

f_k(n) is the length of a shortest k-radius sequence over n symbols.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Optional

from .core import InvalidInput, Sequence, verify
from .primes import divisors, totient


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class BoundSet:
    n: int
    k: int
    general_lower: int
    counting_lower: int
    mod4_lower: Optional[int] = None
    ghosh_exact: Optional[int] = None
    large_k_exact: Optional[int] = None
    jl_upper: Optional[int] = None

    @property
    def lower(self) -> int:
        """Best lower bound available, exact values included."""
        vals = [self.general_lower, self.counting_lower]
        vals += [v for v in (self.mod4_lower, self.ghosh_exact, self.large_k_exact) if v is not None]
        return max(vals)

    @property
    def exact(self) -> Optional[int]:
        if self.ghosh_exact is not None:
            return self.ghosh_exact
        return self.large_k_exact

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "general_lower": self.general_lower,
            "counting_lower": self.counting_lower,
            "mod4_lower": self.mod4_lower,
            "ghosh_exact": self.ghosh_exact,
            "large_k_exact": self.large_k_exact,
            "jl_upper": self.jl_upper,
            "lower": self.lower,
        }


def general_lower_bound(n: int, k: int) -> int:
    """ceil(n^2/2k - n/2k)."""
    return _ceil_div(n * (n - 1), 2 * k)


def counting_lower_bound(n: int, k: int) -> int:
    """Shortest length whose windows could hold every pair at all.

    Position i (0-based) can pair with at most min(i, k) earlier positions, and
    every symbol has to occur at least once.
    """
    need = comb(n, 2)
    m, have = 0, 0
    while have < need:
        have += min(m, k)
        m += 1
    return max(m, n)


def ghosh_length(n: int) -> int:
    if n <= 1:
        return n
    return comb(n, 2) + (1 if n % 2 else n // 2)


def bounds(n: int, k: int) -> BoundSet:
    if n < 1 or k < 1:
        raise InvalidInput(f"need n >= 1 and k >= 1, got n={n} k={k}")
    mod4 = None
    if k == 2 and n % 4 == 2:
        # (1/2) C(n,2) + 3n/4, rounded up
        mod4 = _ceil_div(2 * comb(n, 2) + 3 * n, 4)
    large = None
    if k >= n // 2:
        large = 2 * n - k - 1 if k < n else n
    return BoundSet(
        n=n,
        k=k,
        general_lower=general_lower_bound(n, k),
        counting_lower=counting_lower_bound(n, k),
        mod4_lower=mod4,
        ghosh_exact=ghosh_length(n) if k == 1 else None,
        large_k_exact=large,
        jl_upper=3 * n * n // k if n >= k else None,
    )


def gcd_sum(m: int) -> int:
    """sum_{d=0}^{m-1} gcd(d, m), counting gcd(0, m) as m."""
    if m < 1:
        raise InvalidInput(f"m must be positive, got {m}")
    return sum(gcd(d, m) for d in range(m))


def gcd_sum_totient(m: int) -> int:
    """The same sum through m * sum_{d | m} phi(d)/d."""
    if m < 1:
        raise InvalidInput(f"m must be positive, got {m}")
    total = m * sum(Fraction(totient(d), d) for d in divisors(m))
    assert total.denominator == 1
    return int(total)


# -- exact search -----------------------------------------------------------

OPTIMAL = "optimal"
LOWER_BOUND_ONLY = "lower_bound_only"
BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass
class SearchResult:
    n: int
    k: int
    status: str
    best_length: Optional[int]
    proven_lower: int
    nodes_explored: int
    elapsed: float
    witness: Optional[Sequence] = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "status": self.status,
            "best_length": self.best_length,
            "proven_lower": self.proven_lower,
            "nodes_explored": self.nodes_explored,
            "elapsed": round(self.elapsed, 6),
            "witness": None if self.witness is None else self.witness.tolist(),
        }


class _BudgetExhausted(Exception):
    pass


class _Searcher:
    """Depth-first search for a k-radius sequence of a fixed target length.

    Pruning: a new term adds at most k pairs; every symbol still missing
    partners must reappear often enough to meet them, unless it sits in the
    trailing window; first occurrences come in ascending symbol order; a term
    never repeats its predecessor (dropping such a repeat keeps the property).
    Failed states are memoised with the budget they failed under.
    """

    def __init__(self, n: int, k: int, node_budget: int):
        self.n, self.k = n, k
        self.budget = node_budget
        self.nodes = 0
        self.total = comb(n, 2)
        self.bit = [[0] * n for _ in range(n)]
        idx = 0
        for a in range(n):
            for b in range(a + 1, n):
                self.bit[a][b] = self.bit[b][a] = 1 << idx
                idx += 1
        self.partners = [0] * n
        for a in range(n):
            for b in range(n):
                if a != b:
                    self.partners[a] |= self.bit[a][b]
        self.failed: dict = {}

    def _feasible(self, seq, covered, seen, remaining) -> bool:
        n, k = self.n, self.k
        if n - seen > remaining:
            return False
        missing = self.total - covered.bit_count()
        if missing > k * remaining:
            return False
        # appearances forced by partners still owed
        m = len(seq)
        last = {}
        for pos in range(max(0, m - k), m):
            last[seq[pos]] = pos
        need = 0
        for a in range(n):
            owed = (self.partners[a] & ~covered).bit_count()
            if owed == 0:
                continue
            if a in last:
                # terms still to come that fall within reach of a's last spot
                owed -= min(remaining, k - (m - 1 - last[a]))
                if owed <= 0:
                    continue
            need += _ceil_div(owed, 2 * k)
            if need > remaining:
                return False
        return True

    def run(self, target: int) -> Optional[list[int]]:
        self.failed.clear()
        self.target = target
        seq: list[int] = []
        if self._dfs(seq, 0, 0):
            return seq
        return None

    def _dfs(self, seq, covered, seen) -> bool:
        if seen == self.n and covered.bit_count() == self.total:
            return True
        remaining = self.target - len(seq)
        if remaining <= 0:
            return False
        key = (covered, tuple(seq[-self.k :]), seen)
        if self.failed.get(key, -1) >= remaining:
            return False
        if not self._feasible(seq, covered, seen, remaining):
            self.failed[key] = remaining
            return False
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted
        window = seq[-self.k :]
        prev = seq[-1] if seq else -1
        cands = list(range(min(seen + 1, self.n)))
        # try symbols that gain the most pairs first
        gains = []
        for a in cands:
            if a == prev:
                continue
            gain = 0
            for b in window:
                if b != a:
                    gain |= self.bit[a][b]
            gains.append(((gain & ~covered).bit_count(), a, gain))
        gains.sort(key=lambda g: (-g[0], g[1]))
        for _, a, gain in gains:
            seq.append(a)
            if self._dfs(seq, covered | gain, max(seen, a + 1)):
                return True
            seq.pop()
        self.failed[key] = remaining
        return False


def exact_search(
    n: int,
    k: int,
    node_budget: int = 2_000_000,
    length_cap: Optional[int] = None,
) -> SearchResult:
    """Find f_k(n) by iterative deepening over the target length.

    Lengths are tried upward from the best known lower bound; the first
    length admitting a sequence is optimal.  With ``length_cap`` the search
    stops after refuting every length up to the cap, which proves
    ``f_k(n) > length_cap``.
    """
    if node_budget <= 0:
        raise InvalidInput(f"node budget must be positive, got {node_budget}")
    if n < 1 or k < 1:
        raise InvalidInput(f"need n >= 1 and k >= 1, got n={n} k={k}")
    started = time.perf_counter()
    searcher = _Searcher(n, k, node_budget)
    # start from the counting bounds only: the exact formulas are what we confirm
    target = max(general_lower_bound(n, k), counting_lower_bound(n, k), 1)
    while True:
        if length_cap is not None and target > length_cap:
            return SearchResult(
                n, k, LOWER_BOUND_ONLY, None, target, searcher.nodes,
                time.perf_counter() - started,
            )
        try:
            found = searcher.run(target)
        except _BudgetExhausted:
            return SearchResult(
                n, k, BUDGET_EXHAUSTED, None, target, searcher.nodes,
                time.perf_counter() - started,
            )
        if found is not None:
            witness = Sequence.of(found, n, k)
            assert verify(witness).is_k_radius
            return SearchResult(
                n, k, OPTIMAL, len(found), len(found), searcher.nodes,
                time.perf_counter() - started, witness,
            )
        target += 1
