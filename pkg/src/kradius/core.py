"""Sequence type, the k-radius verifier and the sequence file formats."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

WITNESS_LIMIT = 100
# positions processed per vectorised verifier pass; bounds peak memory
_CHUNK = 1 << 22


class InvalidInput(ValueError):
    pass


class ConstructionError(RuntimeError):
    """A construction produced a sequence that failed its own verification."""


def frozen(arr) -> np.ndarray:
    """View ``arr`` as a read-only int64 array, copying only to change dtype."""
    arr = np.asarray(arr, dtype=np.int64).reshape(-1)
    arr.setflags(write=False)
    return arr


def _as_symbol_array(symbols) -> np.ndarray:
    arr = np.array(symbols, dtype=np.int64).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Sequence:
    """Ordered symbols over the alphabet ``0..n-1`` aimed at radius ``k``.

    Symbols are held in a read-only int64 array; construct through
    :meth:`of` or pass anything ``np.array`` accepts.
    """

    symbols: np.ndarray
    n: int
    k: int

    def __post_init__(self):
        arr = self.symbols
        if not isinstance(arr, np.ndarray) or arr.flags.writeable or arr.dtype != np.int64:
            object.__setattr__(self, "symbols", _as_symbol_array(self.symbols))
        if self.n < 0 or self.k < 1:
            raise InvalidInput(f"need n >= 0 and k >= 1, got n={self.n} k={self.k}")

    @classmethod
    def of(cls, symbols: Iterable[int], n: int, k: int) -> "Sequence":
        return cls(_as_symbol_array(list(symbols)), n, k)

    def __len__(self) -> int:
        return int(self.symbols.shape[0])

    def __iter__(self):
        return iter(self.symbols.tolist())

    def __getitem__(self, i):
        return self.symbols[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Sequence):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and np.array_equal(self.symbols, other.symbols)
        )

    def __hash__(self):
        return hash((self.n, self.k, self.symbols.tobytes()))

    def __repr__(self) -> str:
        head = self.symbols[:12].tolist()
        tail = ", ..." if len(self) > 12 else ""
        return f"Sequence(n={self.n}, k={self.k}, len={len(self)}, {head}{tail})"

    def tolist(self) -> list[int]:
        return self.symbols.tolist()

    def with_radius(self, k: int) -> "Sequence":
        return Sequence(self.symbols, self.n, k)

    def check(self) -> None:
        """Raise :class:`InvalidInput` if some symbol lies outside ``0..n-1``."""
        if len(self) == 0:
            return
        bad = np.flatnonzero((self.symbols < 0) | (self.symbols >= self.n))
        if bad.size:
            i = int(bad[0])
            raise InvalidInput(
                f"symbol {int(self.symbols[i])} at index {i} outside alphabet 0..{self.n - 1}"
            )


@dataclass(frozen=True)
class CoverageReport:
    n: int
    k: int
    total_pairs: int
    covered_pairs: int
    uncovered_witnesses: tuple[tuple[int, int], ...] = field(default=())
    truncated: bool = False

    @property
    def is_k_radius(self) -> bool:
        return self.covered_pairs == self.total_pairs

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "total_pairs": self.total_pairs,
            "covered_pairs": self.covered_pairs,
            "is_k_radius": self.is_k_radius,
            "uncovered_witnesses": [list(p) for p in self.uncovered_witnesses],
            "truncated": self.truncated,
        }


def _row_starts(n: int) -> np.ndarray:
    a = np.arange(n, dtype=np.int64)
    return a * (2 * n - a - 1) // 2


def pair_index(a, b, n: int):
    """Triangular index of the unordered pair {a, b}, a != b."""
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    return lo * (2 * n - lo - 1) // 2 + (hi - lo - 1)


def coverage_mask(symbols: np.ndarray, n: int, k: int) -> np.ndarray:
    """Boolean array over the n(n-1)/2 pairs marking those within distance k."""
    covered = np.zeros(n * (n - 1) // 2, dtype=bool)
    m = symbols.shape[0]
    if n < 2:
        return covered
    for start in range(0, m, _CHUNK):
        stop = min(m, start + _CHUNK)
        left = symbols[start:stop]
        for gap in range(1, k + 1):
            right = symbols[start + gap : min(m, stop + gap)]
            if right.size == 0:
                break
            a = left[: right.size]
            keep = a != right
            covered[pair_index(a[keep], right[keep], n)] = True
    return covered


def verify(seq: Sequence, k: Optional[int] = None) -> CoverageReport:
    """Check which unordered symbol pairs occur within distance ``k``.

    ``k`` defaults to the radius the sequence is tagged with.
    """
    seq.check()
    n = seq.n
    k = seq.k if k is None else k
    if k < 1:
        raise InvalidInput(f"k must be positive, got {k}")
    covered = coverage_mask(seq.symbols, n, k)
    total = covered.size
    n_covered = int(np.count_nonzero(covered))
    witnesses: tuple[tuple[int, int], ...] = ()
    truncated = False
    if n_covered < total:
        missing = np.flatnonzero(~covered)
        truncated = missing.size > WITNESS_LIMIT
        missing = missing[:WITNESS_LIMIT]
        starts = _row_starts(n)
        lo = np.searchsorted(starts, missing, side="right") - 1
        hi = missing - starts[lo] + lo + 1
        witnesses = tuple(zip(lo.tolist(), hi.tolist()))
    return CoverageReport(n, k, total, n_covered, witnesses, truncated)


def is_k_radius(seq: Sequence, k: Optional[int] = None) -> bool:
    return verify(seq, k).is_k_radius


def pair_gap(seq: Sequence, a: int, b: int) -> Optional[int]:
    """Smallest index distance between an occurrence of ``a`` and one of ``b``.

    Returns None when either symbol never occurs.
    """
    if a == b:
        raise InvalidInput("pair_gap needs two distinct symbols")
    for s in (a, b):
        if not 0 <= s < seq.n:
            raise InvalidInput(f"symbol {s} outside alphabet 0..{seq.n - 1}")
    pa = np.flatnonzero(seq.symbols == a)
    pb = np.flatnonzero(seq.symbols == b)
    if pa.size == 0 or pb.size == 0:
        return None
    # nearest b on either side of each a
    idx = np.searchsorted(pb, pa)
    best = None
    for cand in (idx - 1, idx):
        ok = (cand >= 0) & (cand < pb.size)
        if ok.any():
            d = int(np.abs(pb[cand[ok]] - pa[ok]).min())
            best = d if best is None else min(best, d)
    return best


# -- file formats -----------------------------------------------------------


def format_text(seq: Sequence) -> str:
    body = "\n".join(map(str, seq.tolist()))
    return f"# n={seq.n} k={seq.k}\n" + (body + "\n" if body else "")


def format_json(seq: Sequence, **extra) -> str:
    doc = {"n": seq.n, "k": seq.k, "length": len(seq), "symbols": seq.tolist()}
    doc.update(extra)
    return json.dumps(doc)


def parse_sequence(text: str) -> Sequence:
    """Parse either the ``# n=.. k=..`` line format or the JSON object format."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
            return Sequence.of(doc["symbols"], int(doc["n"]), int(doc["k"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"bad JSON sequence: {exc}") from exc

    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("#"):
        raise InvalidInput("missing '# n=<n> k=<k>' header line")
    header = {}
    for tok in lines[0].lstrip("#").split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise InvalidInput(f"bad header token {tok!r}")
        header[key] = val
    try:
        n, k = int(header["n"]), int(header["k"])
    except (KeyError, ValueError) as exc:
        raise InvalidInput(f"header needs integer n and k: {lines[0]!r}") from exc
    symbols = []
    for lineno, ln in enumerate(lines[1:], start=2):
        if ln.startswith("#"):
            continue
        try:
            if ln.startswith("_"):
                # underlined value v of a 2p alphabet stands for p + v
                symbols.append(n // 2 + int(ln[1:]))
            else:
                symbols.append(int(ln))
        except ValueError as exc:
            raise InvalidInput(f"line {lineno}: not an integer: {ln!r}") from exc
    return Sequence.of(symbols, n, k)
