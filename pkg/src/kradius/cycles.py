"""Cycle decomposition of the (2k+1) x q toroidal graph and the sequence s.

Vertices are pairs ``(i, j)`` with ``i`` taken mod ``2k+1`` and ``j`` mod
``q``.  The edge class ``E_d`` joins ``(i, j)`` to ``(i+1, j+d)``; each class
splits into ``c_d = gcd((2k+1)d, q)`` disjoint cycles, the ``j``-th of which
starts at ``(0, j)``.  Vertices are encoded as symbols ``i*q + j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple

import numpy as np

from .core import InvalidInput, Sequence


class Vertex(NamedTuple):
    i: int
    j: int


@dataclass(frozen=True)
class CycleSystemParams:
    k: int
    q: int

    def __post_init__(self):
        _check_kq(self.k, self.q)

    @property
    def parts(self) -> int:
        return 2 * self.k + 1

    @property
    def n_vertices(self) -> int:
        return self.parts * self.q

    def divisor_condition(self) -> bool:
        return divisor_condition(self.k, self.q)


@dataclass(frozen=True)
class CycleSeq:
    k: int
    q: int
    d: int
    j: int
    vertices: tuple[Vertex, ...]

    def __len__(self):
        return len(self.vertices)


def _check_kq(k: int, q: int) -> None:
    if k < 1 or q < 1:
        raise InvalidInput(f"need k >= 1 and q >= 1, got k={k} q={q}")


def _check_d(k: int, q: int, d: int) -> None:
    _check_kq(k, q)
    if not 0 <= d < q:
        raise InvalidInput(f"edge class d={d} outside 0..{q - 1}")


def divisor_condition(k: int, q: int) -> bool:
    """True when every divisor of q other than 1 exceeds k."""
    _check_kq(k, q)
    return all(q % f for f in range(2, min(k, q) + 1))


def c_d(k: int, q: int, d: int) -> int:
    """Number of cycles in G_d: gcd((2k+1)d, q), with gcd(0, q) = q."""
    _check_d(k, q, d)
    return gcd((2 * k + 1) * d, q)


def cycle_length(k: int, q: int, d: int) -> int:
    return (2 * k + 1) * q // c_d(k, q, d)


def encode(i: int, j: int, q: int) -> int:
    return i * q + j


def decode(symbol: int, q: int) -> Vertex:
    i, j = divmod(symbol, q)
    return Vertex(i, j)


def _cycle_arrays(k: int, q: int, d: int, j, steps: int):
    """Row/column coordinates of ``steps`` consecutive vertices from (0, j)."""
    t = np.arange(steps, dtype=np.int64)
    rows = t % (2 * k + 1)
    cols = (np.asarray(j, dtype=np.int64)[..., None] + t * d) % q
    return np.broadcast_to(rows, cols.shape), cols


def _check_j(k: int, q: int, d: int, j: int) -> int:
    count = c_d(k, q, d)
    if not 0 <= j < count:
        raise InvalidInput(
            f"cycle index j={j} invalid for d={d}: G_d has {count} cycles (j in 0..{count - 1})"
        )
    return count


def build_cycle(k: int, q: int, d: int, j: int) -> CycleSeq:
    """Vertices of the cycle C_j^d in traversal order; the closing edge is implicit."""
    _check_j(k, q, d, j)
    rows, cols = _cycle_arrays(k, q, d, j, cycle_length(k, q, d))
    verts = tuple(Vertex(int(a), int(b)) for a, b in zip(rows.tolist(), cols.tolist()))
    return CycleSeq(k, q, d, j, verts)


def build_padded(k: int, q: int, d: int, j: int) -> list[Vertex]:
    """The cycle C_j^d followed by its first k vertices again."""
    cyc = build_cycle(k, q, d, j)
    return list(cyc.vertices) + list(cyc.vertices[:k])


def padded_symbols(k: int, q: int, d: int) -> np.ndarray:
    """Encoded padded cycles of G_d, concatenated in ascending j."""
    count = gcd((2 * k + 1) * d, q)
    length = (2 * k + 1) * q // count
    # the walk is periodic with period `length`, so running k steps past the
    # end reproduces the first k vertices
    rows, cols = _cycle_arrays(k, q, d, np.arange(count), length + k)
    return (rows * q + cols).reshape(-1)


def build_s_symbols(k: int, q: int) -> np.ndarray:
    _check_kq(k, q)
    parts = [padded_symbols(k, q, d) for d in range(q)]
    return np.concatenate(parts)


def build_s(k: int, q: int) -> Sequence:
    """Concatenate every padded cycle, d ascending then j ascending.

    The result lives over the alphabet of ``(2k+1)q`` encoded vertices.
    """
    return Sequence(build_s_symbols(k, q), (2 * k + 1) * q, k)


def gcd_class_sum(k: int, q: int) -> int:
    return sum(gcd((2 * k + 1) * d, q) for d in range(q))


def s_length_formula(k: int, q: int) -> int:
    """Closed-form length of :func:`build_s`: (2k+1)q^2 + k * sum_d gcd((2k+1)d, q)."""
    _check_kq(k, q)
    return (2 * k + 1) * q * q + k * gcd_class_sum(k, q)


@dataclass(frozen=True)
class EdgeClasses:
    k: int
    q: int
    classes: dict[int, frozenset]
    all_edges: frozenset
    disjoint: bool
    covers_graph: bool

    @property
    def is_partition(self) -> bool:
        return self.disjoint and self.covers_graph


def _edge(u: Vertex, v: Vertex):
    return (u, v) if u <= v else (v, u)


def edge_classes(k: int, q: int, max_edges: int = 2_000_000) -> EdgeClasses:
    """Enumerate every E_d and check that they partition the edge set of G.

    Diagnostic only; refuses parameters with more than ``max_edges`` edges.
    """
    _check_kq(k, q)
    parts = 2 * k + 1
    if parts * q * q > max_edges:
        raise InvalidInput(f"edge_classes is limited to {max_edges} edges")
    classes = {}
    for d in range(q):
        classes[d] = frozenset(
            _edge(Vertex(i, j), Vertex((i + 1) % parts, (j + d) % q))
            for i in range(parts)
            for j in range(q)
        )
    # E(G) enumerated independently of the class split
    all_edges = frozenset(
        _edge(Vertex(i, j), Vertex((i + 1) % parts, jj))
        for i in range(parts)
        for j in range(q)
        for jj in range(q)
    )
    total = sum(len(c) for c in classes.values())
    union = frozenset().union(*classes.values())
    return EdgeClasses(
        k,
        q,
        classes,
        all_edges,
        disjoint=total == len(union),
        covers_graph=union == all_edges,
    )
