"""Optimal 2-radius sequences over 2p symbols, p prime.

The alphabet is ``{0..p-1}`` plus an underlined copy ``{0_..p-1_}``.  Plain
value ``v`` encodes to symbol ``v`` and underlined ``v`` to ``p + v``.

For odd p the sequence is ``I`` followed by ``T'``: ``I`` strings together
halves of the Hamiltonian cycles ``H_j`` of K_{p,p} (edges ``(i, i+j_)`` and
``(i, i-j_)``), and ``T'`` picks up the pairs ``I`` misses.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from .core import InvalidInput, Sequence
from .primes import is_prime, modinv


class BipSymbol(NamedTuple):
    value: int
    underlined: bool = False

    def encode(self, p: int) -> int:
        return self.value + p if self.underlined else self.value

    @classmethod
    def decode(cls, symbol: int, p: int) -> "BipSymbol":
        if not 0 <= symbol < 2 * p:
            raise InvalidInput(f"symbol {symbol} outside 0..{2 * p - 1}")
        return cls(symbol - p, True) if symbol >= p else cls(symbol, False)

    def label(self) -> str:
        return f"_{self.value}" if self.underlined else str(self.value)


class HamCycle(NamedTuple):
    p: int
    j: int
    vertices: tuple[BipSymbol, ...]


def _check_odd_prime(p: int) -> None:
    if p <= 2 or not is_prime(p):
        raise InvalidInput(f"p must be an odd prime, got {p}")


def _check_j(p: int, j: int) -> None:
    _check_odd_prime(p)
    if not 1 <= j <= (p - 1) // 2:
        raise InvalidInput(f"j={j} outside 1..{(p - 1) // 2}")


def build_Hj(p: int, j: int) -> HamCycle:
    """Walk H_j from 0: step t visits t*j mod p, underlined on odd t."""
    _check_j(p, j)
    verts = tuple(BipSymbol(t * j % p, t % 2 == 1) for t in range(2 * p))
    return HamCycle(p, j, verts)


def split_Ij(p: int, j: int) -> tuple[list[BipSymbol], list[BipSymbol]]:
    """Cut the walk of H_j just before the underlined 1.

    The first part runs from 0 up to (not including) ``1_``; the second from
    ``1_`` to the end of the cycle, i.e. the vertex just before 0.
    """
    walk = build_Hj(p, j).vertices
    # 1_ sits at the odd step t with t*j = 1 (mod p)
    t = modinv(j, p)
    if t % 2 == 0:
        t += p
    return list(walk[:t]), list(walk[t:])


def _I_order(p: int) -> list[tuple[int, int]]:
    """(j, part) pairs in the order they are concatenated; part 0 is I', 1 is I''."""
    half = (p - 1) // 2
    forward = [(j, 0 if j % 2 else 1) for j in range(1, half + 1)]
    backward = [(j, 1 - part) for j, part in reversed(forward)]
    return forward + backward


def build_I(p: int) -> list[BipSymbol]:
    """Interleave the split cycles: I'_1 I''_2 I'_3 ... then back down to I''_1.

    Going up, odd j contributes I'_j and even j I''_j; coming back down each j
    contributes the other half.  Both parities of (p-1)/2 follow this rule.
    """
    _check_odd_prime(p)
    halves = {j: split_Ij(p, j) for j in range(1, (p - 1) // 2 + 1)}
    out: list[BipSymbol] = []
    for j, part in _I_order(p):
        out.extend(halves[j][part])
    return out


def build_T(p: int) -> list[BipSymbol]:
    _check_odd_prime(p)
    out = []
    for i in range(1, 2 * p + 1):
        r = i % 4
        if r == 1:
            out.append(BipSymbol(-((i - 1) // 2) % p, True))
        elif r == 2:
            out.append(BipSymbol(-((i - 2) // 2) % p, False))
        elif r == 3:
            out.append(BipSymbol((i + 1) // 2 % p, False))
        else:
            out.append(BipSymbol(i // 2 % p, True))
    return out


def build_Tprime(p: int) -> list[BipSymbol]:
    t = build_T(p)
    t[0], t[1] = t[1], t[0]
    return t


def encode_all(symbols: Iterable[BipSymbol], p: int) -> list[int]:
    return [s.encode(p) for s in symbols]


def construct_2p(p: int) -> Sequence:
    """Optimal 2-radius sequence of length p^2 + p over 2p symbols.

    ``T'`` opens with 0, which doubles as the 0 closing the cycle halves of
    ``I``, so nothing is inserted between the two parts.
    """
    if not is_prime(p):
        raise InvalidInput(f"p must be prime, got {p}")
    if p == 2:
        return Sequence.of([0, 1, 2, 3, 0], 4, 2)
    symbols = encode_all(build_I(p), p) + encode_all(build_Tprime(p), p)
    return Sequence.of(symbols, 2 * p, 2)


def erase_symbols(seq: Sequence, victims: Iterable[int]) -> Sequence:
    """Delete every occurrence of ``victims`` and relabel the survivors densely.

    Relabelling keeps the original order of symbol ids.  Removing terms only
    pulls the rest closer together, so a k-radius input stays k-radius.
    """
    victims = set(victims)
    for v in victims:
        if not 0 <= v < seq.n:
            raise InvalidInput(f"victim {v} outside alphabet 0..{seq.n - 1}")
    if seq.n and len(victims) == seq.n:
        raise InvalidInput("cannot erase the whole alphabet")
    if not victims:
        return seq
    dead = np.zeros(seq.n, dtype=bool)
    dead[list(victims)] = True
    relabel = np.cumsum(~dead) - 1
    kept = seq.symbols[~dead[seq.symbols]]
    return Sequence(relabel[kept], seq.n - len(victims), seq.k)


def render(seq: Sequence, p: int) -> list[str]:
    """Symbols as labels, with underlined values shown as ``_v``."""
    return [BipSymbol.decode(s, p).label() for s in seq.tolist()]
