"""Top-level construction of short k-radius sequences.

The main route splits the alphabet into 2k+1 classes of q symbols plus a
leftover set B.  Each class gets its own (recursively built) k-radius
sequence, every symbol is paired with each member of B, and the cycle
sequence ``s`` over the classes covers all cross-class pairs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import NamedTuple, Optional

import numpy as np

from .core import ConstructionError, InvalidInput, Sequence, frozen, verify
from .cycles import build_s_symbols, divisor_condition, s_length_formula
from .optimal2p import construct_2p, erase_symbols
from .primes import is_prime, next_prime, prev_prime, smallest_prime_factor

log = logging.getLogger(__name__)

STRATEGIES = (
    "auto",
    "main_recursive",
    "optimal_2p",
    "block_expand",
    "trivial_large_k",
    "single_pass",
    "ghosh_base",
)
Q_CHOICES = ("prime", "factorial")

# construct() re-verifies its result up to this alphabet size unless told otherwise
SELF_VERIFY_LIMIT = 10_000


class NoValidQ(ValueError):
    pass


class TraceStep(NamedTuple):
    strategy: str
    n: int
    k: int
    q: Optional[int]
    depth: int


@dataclass
class BuildPlan:
    n: int
    k: int
    strategy: str = "auto"
    q_choice: str = "prime"
    trace: list[TraceStep] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "strategy": self.strategy,
            "q_choice": self.q_choice,
            "trace": [step._asdict() for step in self.trace],
        }


# -- choosing q ---------------------------------------------------------------


def choose_q_factorial(p: int, x: int) -> int:
    """q = floor((x-1)/p!) * p! + 1, which has no divisor in 2..p.

    Lies in (x - p!, x].  May return 1, which callers should treat as useless.
    """
    if p < 1:
        raise InvalidInput(f"p must be positive, got {p}")
    if p > 20:
        raise OverflowError(f"p!={p}! does not fit in 64 bits")
    fact = factorial(p)
    if x < fact:
        raise NoValidQ(f"x={x} is below {p}! = {fact}")
    return (x - 1) // fact * fact + 1


def choose_q_prime(k: int, n: int) -> int:
    """Largest prime q <= n/(2k+1) with q > k."""
    x = n // (2 * k + 1)
    if x < 2:
        raise NoValidQ(f"n/(2k+1) = {x} leaves no room for a prime (n={n}, k={k})")
    q = prev_prime(x)
    if q is None or q <= k:
        raise NoValidQ(f"no prime q with {k} < q <= {x}")
    return q


def _choose_q(k: int, n: int, q_choice: str) -> int:
    if q_choice == "prime":
        return choose_q_prime(k, n)
    if q_choice == "factorial":
        x = n // (2 * k + 1)
        q = choose_q_factorial(k, x) if k <= 20 else None
        if q is None or q < 2:
            raise NoValidQ(f"factorial choice gives no usable q for n={n}, k={k}")
        return q
    raise InvalidInput(f"unknown q choice {q_choice!r}")


# -- building blocks ----------------------------------------------------------


def single_pass(n: int, k: int = 1) -> Sequence:
    return Sequence(np.arange(n, dtype=np.int64), n, k)


def trivial_large_k(n: int, k: int) -> Sequence:
    """0..n-1 followed by 0..n-k-2: length 2n-k-1, valid once k >= n/2.

    Pairs b - a <= k meet in the first pass; the others meet across the seam
    at distance n + a - b <= k.
    """
    if not n // 2 <= k < n:
        raise InvalidInput(f"trivial_large_k needs floor(n/2) <= k < n, got n={n} k={k}")
    sym = np.concatenate([np.arange(n), np.arange(n - k - 1)]).astype(np.int64)
    return Sequence(sym, n, k)


def _walecki_paths(m: int) -> np.ndarray:
    """m Hamiltonian paths of K_2m (the zigzag i, i+1, i-1, i+2, ..., i+m), stacked."""
    offsets = [0]
    for t in range(1, m):
        offsets += [t, -t]
    offsets.append(m)
    offs = np.array(offsets, dtype=np.int64)
    return (np.arange(m, dtype=np.int64)[:, None] + offs) % (2 * m)


def ghosh_1radius(n: int) -> Sequence:
    """Shortest 1-radius sequence: C(n,2)+1 terms for odd n, C(n,2)+n/2 for even n.

    Odd n = 2m+1 is an Eulerian circuit of K_n made of the m Walecki
    Hamiltonian cycles through the extra vertex 2m.  Even n = 2m chains the m
    Walecki Hamiltonian paths of K_n; each seam repeats one edge, which is the
    m - 1 extra edges an Euler trail of K_n needs.
    """
    if n < 1:
        raise InvalidInput(f"n must be positive, got {n}")
    if n == 1:
        return Sequence.of([0], 1, 1)
    m = n // 2
    paths = _walecki_paths(m)
    if n % 2 == 0:
        sym = paths.reshape(-1)
    else:
        hub = np.full((m, 1), 2 * m, dtype=np.int64)
        sym = np.concatenate([np.hstack([hub, paths]).reshape(-1), [2 * m]])
    return Sequence(frozen(sym), n, 1)


def assemble_lemma6(n: int, k: int, q: int, class_sequences: list[Sequence]) -> Sequence:
    """Join class sequences, the A x B pairs and the cycle sequence s.

    ``class_sequences[i]`` must be a k-radius sequence over the symbols
    ``i*q .. i*q+q-1`` (already in global ids).  Symbols from ``(2k+1)q`` up
    form the leftover set B; each b in B is written next to every symbol a,
    as ``a, b``, b-major.
    """
    parts = 2 * k + 1
    if q < 1 or k < 1:
        raise InvalidInput(f"need q >= 1 and k >= 1, got q={q} k={k}")
    if parts * q > n:
        raise InvalidInput(f"(2k+1)q = {parts * q} exceeds n = {n}")
    if not divisor_condition(k, q):
        raise InvalidInput(f"q={q} has a divisor in 2..{k}")
    if len(class_sequences) != parts:
        raise InvalidInput(f"need {parts} class sequences, got {len(class_sequences)}")
    for i, t in enumerate(class_sequences):
        lo, hi = i * q, i * q + q
        if len(t) and (t.symbols.min() < lo or t.symbols.max() >= hi):
            raise InvalidInput(f"class sequence {i} leaves symbol range {lo}..{hi - 1}")
    leftover = np.arange(parts * q, n, dtype=np.int64)
    a = np.tile(np.arange(n, dtype=np.int64), leftover.size)
    b = np.repeat(leftover, n)
    s_ab = np.stack([a, b], axis=1).reshape(-1)
    chunks = [t.symbols for t in class_sequences] + [s_ab, build_s_symbols(k, q)]
    return Sequence(frozen(np.concatenate(chunks)), n, k)


def assembled_length(n: int, k: int, q: int, class_lengths) -> int:
    return sum(class_lengths) + 2 * n * (n - (2 * k + 1) * q) + s_length_formula(k, q)


def block_size(k: int, K: int) -> int:
    return (k + 1) // (K + 1)


def expand_lemma11(seq: Sequence, k: int, n: int) -> Sequence:
    """Blow each symbol of a K-radius sequence up into a block of symbols.

    With blocks of ``(k+1)//(K+1)`` consecutive ids (the last one possibly
    short), every occurrence of block symbol ``a`` becomes its block in
    ascending order; the result is k-radius over n symbols.
    """
    K, N = seq.k, seq.n
    if not 1 <= K <= k:
        raise InvalidInput(f"need 1 <= K <= k, got K={K} k={k}")
    size = block_size(k, K)
    if N != -(-n // size):
        raise InvalidInput(f"{N} blocks of {size} do not match n={n}")
    starts = seq.symbols * size
    widths = np.minimum(size, n - starts)
    total = int(widths.sum())
    first = np.repeat(np.cumsum(widths) - widths, widths)
    out = np.repeat(starts, widths) + (np.arange(total, dtype=np.int64) - first)
    return Sequence(frozen(out), n, k)


def _largest_progress_K(k: int) -> int:
    """Largest K < k whose blocks hold at least two symbols."""
    return (k + 1) // 2 - 1


def _erased_2p(n: int) -> tuple[Sequence, int]:
    """Optimal 2-radius sequence over the next 2p >= n symbols, cut down to n."""
    p = next_prime((n + 1) // 2)
    full = construct_2p(p)
    return erase_symbols(full, range(n, 2 * p)), p


# -- dispatch -----------------------------------------------------------------

Built = tuple[np.ndarray, tuple[TraceStep, ...]]


def _shift(steps, by: int) -> tuple[TraceStep, ...]:
    return tuple(s._replace(depth=s.depth + by) for s in steps)


def _main_recursive(n: int, k: int, q_choice: str) -> Built:
    q = _choose_q(k, n, q_choice)
    inner, steps = _build(q, k, "auto", q_choice)
    parts = 2 * k + 1
    classes = [Sequence(frozen(inner + i * q), n, k) for i in range(parts)]
    seq = assemble_lemma6(n, k, q, classes)
    return seq.symbols, (TraceStep("main_recursive", n, k, q, 0),) + _shift(steps, 1)


def _block_expand(n: int, k: int, q_choice: str) -> Built:
    K = _largest_progress_K(k)
    if K < 1:
        raise InvalidInput(f"block expansion makes no progress for k={k}")
    N = -(-n // block_size(k, K))
    inner, steps = _build(N, K, "auto", q_choice)
    out = expand_lemma11(Sequence(inner, N, K), k, n)
    return out.symbols, (TraceStep("block_expand", n, k, K, 0),) + _shift(steps, 1)


def _build_uncached(n: int, k: int, strategy: str, q_choice: str) -> Built:
    if n == 0:
        return np.zeros(0, dtype=np.int64), ()

    if strategy == "auto":
        if n <= k + 1:
            strategy = "single_pass"
        elif k >= n // 2:
            strategy = "trivial_large_k"
        elif k == 1:
            strategy = "ghosh_base"
        elif k == 2 and n % 2 == 0 and is_prime(n // 2) and n // 2 > 2:
            strategy = "optimal_2p"
        else:
            try:
                return _main_recursive(n, k, q_choice)
            except NoValidQ:
                pass
            if k >= 3:
                strategy = "block_expand"
            else:
                # k == 2 with n in 6..14: trim the next optimal 2p sequence
                seq, p = _erased_2p(n)
                return seq.symbols, (TraceStep("optimal_2p", n, k, p, 0),)

    if strategy == "single_pass":
        if n > k + 1:
            raise InvalidInput(f"single pass needs n <= k+1, got n={n} k={k}")
        return single_pass(n, k).symbols, (TraceStep("single_pass", n, k, None, 0),)
    if strategy == "trivial_large_k":
        seq = trivial_large_k(n, k)
        return seq.symbols, (TraceStep("trivial_large_k", n, k, None, 0),)
    if strategy == "ghosh_base":
        return ghosh_1radius(n).symbols, (TraceStep("ghosh_base", n, k, None, 0),)
    if strategy == "optimal_2p":
        p = n // 2
        if k != 2 or n % 2 or not is_prime(p):
            raise InvalidInput(f"optimal_2p needs k=2 and n=2p with p prime, got n={n} k={k}")
        return construct_2p(p).symbols, (TraceStep("optimal_2p", n, k, p, 0),)
    if strategy == "main_recursive":
        return _main_recursive(n, k, q_choice)
    if strategy == "block_expand":
        return _block_expand(n, k, q_choice)
    raise InvalidInput(f"unknown strategy {strategy!r}")


# sub-builds repeat across classes and grid points; the top level is not cached
_build = lru_cache(maxsize=256)(_build_uncached)


def construct(
    n: int,
    k: int,
    strategy: Optional[str] = None,
    q_choice: str = "prime",
    self_verify: Optional[bool] = None,
) -> tuple[Sequence, BuildPlan]:
    """Build a k-radius sequence over ``n`` symbols.

    ``strategy`` picks a specific construction for the top level (deeper
    levels always dispatch automatically).  The result is verified before
    it is returned when ``n <= SELF_VERIFY_LIMIT`` or ``self_verify`` is set;
    a failure raises :class:`ConstructionError`.
    """
    strategy = strategy or "auto"
    if strategy not in STRATEGIES:
        raise InvalidInput(f"unknown strategy {strategy!r}; pick one of {', '.join(STRATEGIES)}")
    if q_choice not in Q_CHOICES:
        raise InvalidInput(f"unknown q choice {q_choice!r}")
    if n < 0 or k < 1:
        raise InvalidInput(f"need n >= 0 and k >= 1, got n={n} k={k}")
    symbols, steps = _build_uncached(n, k, strategy, q_choice)
    seq = Sequence(symbols, n, k)
    plan = BuildPlan(n, k, strategy, q_choice, list(steps))
    if self_verify is None:
        self_verify = n <= SELF_VERIFY_LIMIT
    if self_verify and n > 0:
        report = verify(seq)
        if not report.is_k_radius:
            raise ConstructionError(
                f"construct(n={n}, k={k}) is not {k}-radius; "
                f"uncovered pairs e.g. {report.uncovered_witnesses[:5]}"
            )
    log.debug("construct n=%d k=%d length=%d trace=%s", n, k, len(seq), steps)
    return seq, plan


def estimated_ratio(length: int, n: int, k: int) -> float:
    """length / (n^2 / 2k): 1.0 is the leading term of the optimum."""
    return length * 2 * k / (n * n)


def factorial_q_ok(q: int, p: int) -> bool:
    """Trial-division check: smallest prime factor of q exceeds p (or q == 1)."""
    return q == 1 or smallest_prime_factor(q) > p
