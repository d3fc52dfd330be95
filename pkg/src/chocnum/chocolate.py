"""Exact chocolate numbers and the sequence generators built on them.

A chocolate number counts the ordered ways to break a gridded m x n bar all
the way down to unit squares, where two breaks differ if they act on
different pieces or along different grid lines.  The count satisfies a
split recursion: the first break severs the bar into two sub-bars, the
remaining moves interleave freely (a binomial weight), and each sub-bar is
then an independent subproblem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .arith import binomial

CACHE_HEADER = "chocnum cache v1"


class CacheFormatError(ValueError):
    """Raised when a cache file has the wrong header or a malformed line."""


class SequenceFrontierError(RuntimeError):
    """Raised when the distinct-value generator cannot certify completeness.

    The generator stops extending a row once a value exceeds the bound, which
    is only sound if rows are nondecreasing.  That is checked at runtime; a
    violation aborts the enumeration instead of silently dropping values.
    """


class ChocolateTable:
    """Memo table of break counts keyed by normalized (m, n) with m <= n.

    Normalizing keys halves the table: an m x n bar and its transpose break
    in equally many ways.  Concurrent readers are safe; writes are one
    dict-entry at a time, so concurrent computes may duplicate work but never
    corrupt the table.  ``computed`` counts actual recursion-level evaluations
    (cache misses), which lets tests prove that a reloaded cache short-circuits
    the recursion.
    """

    def __init__(self) -> None:
        self.memo: dict[tuple[int, int], int] = {}
        self.computed = 0

    @staticmethod
    def key(m: int, n: int) -> tuple[int, int]:
        return (m, n) if m <= n else (n, m)

    def get(self, m: int, n: int) -> int | None:
        return self.memo.get(self.key(m, n))

    def put(self, m: int, n: int, value: int) -> None:
        self.memo[self.key(m, n)] = value

    def __len__(self) -> int:
        return len(self.memo)

    def __eq__(self, other) -> bool:
        return isinstance(other, ChocolateTable) and self.memo == other.memo


def chocolate_number(m: int, n: int, table: ChocolateTable | None = None) -> int:
    """Number of ways to fully break an m x n bar, exactly.

    A 1 x k bar has (k-1)! break orders.  Otherwise, summing over the first
    break: a horizontal cut after row i leaves an i x n and an (m-i) x n bar
    whose remaining i*n-1 and (m-i)*n-1 moves interleave in C(mn-2, in-1)
    ways; vertical cuts contribute symmetrically.
    """
    if m < 1 or n < 1:
        raise ValueError(f"bar dimensions must be positive, got {m} x {n}")
    if table is None:
        table = ChocolateTable()
    return _chocolate(m, n, table)


def _chocolate(m: int, n: int, table: ChocolateTable) -> int:
    if m > n:
        m, n = n, m
    cached = table.memo.get((m, n))
    if cached is not None:
        return cached
    table.computed += 1
    if m == 1:
        value = math.factorial(n - 1)
    else:
        value = 0
        for i in range(1, m):
            value += (
                binomial(m * n - 2, i * n - 1)
                * _chocolate(i, n, table)
                * _chocolate(m - i, n, table)
            )
        for i in range(1, n):
            value += (
                binomial(m * n - 2, i * m - 1)
                * _chocolate(i, m, table)
                * _chocolate(n - i, m, table)
            )
    table.memo[(m, n)] = value
    return value


def chocolate2(n: int, table: ChocolateTable | None = None) -> int:
    """Break count for a 2 x n bar via the dedicated one-dimensional
    recursion (factorial term plus binomially weighted products of smaller
    cases).  Must agree with chocolate_number(2, n); the two routes are kept
    independent so they can check each other."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if table is None:
        table = ChocolateTable()
    known = table.memo.get((2, n) if n >= 2 else (1, 2))
    if known is not None:
        return known
    values = [0] * (n + 1)
    values[1] = 1
    for j in range(2, n + 1):
        prior = table.memo.get((2, j) if j >= 2 else (1, 2))
        if prior is not None:
            values[j] = prior
            continue
        v = math.factorial(2 * j - 2)
        for i in range(1, j):
            v += binomial(2 * j - 2, 2 * i - 1) * values[i] * values[j - i]
        values[j] = v
        table.memo[(2, j)] = v
        table.computed += 1
    if n == 1:
        return 1
    return values[n]


class SequenceKind(Enum):
    TRIANGLE_ROWS = "triangle_rows"
    DISTINCT_SORTED = "distinct_sorted"
    TWO_BY_N = "two_by_n"
    SQUARE = "square"


@dataclass(frozen=True)
class SequenceSpec:
    """Which derived sequence to generate and how far.

    ``bound`` is an index bound (row count / max index) for triangle_rows,
    two_by_n and square, and an inclusive value bound for distinct_sorted.
    """

    kind: SequenceKind
    bound: int

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError(f"bound must be positive, got {self.bound}")


def generate(spec: SequenceSpec, table: ChocolateTable | None = None) -> list[tuple]:
    """Generate one of the four derived sequences as (index-or-pair, value)
    entries in canonical order."""
    if table is None:
        table = ChocolateTable()
    if spec.kind is SequenceKind.TRIANGLE_ROWS:
        out = []
        for r in range(1, spec.bound + 1):
            for i in range(1, r + 1):
                out.append(((i, r + 1 - i), chocolate_number(i, r + 1 - i, table)))
        return out
    if spec.kind is SequenceKind.TWO_BY_N:
        return [(n, chocolate2(n, table)) for n in range(1, spec.bound + 1)]
    if spec.kind is SequenceKind.SQUARE:
        return [(n, chocolate_number(n, n, table)) for n in range(1, spec.bound + 1)]
    if spec.kind is SequenceKind.DISTINCT_SORTED:
        return [(i, v) for i, v in enumerate(_distinct_values(spec.bound, table), start=1)]
    raise ValueError(f"unknown sequence kind: {spec.kind}")


def _distinct_values(bound: int, table: ChocolateTable) -> list[int]:
    """Every distinct break count <= bound, sorted increasing.

    Rows m = 1, 2, ... are scanned from n = m upward (values with n < m are
    transposes of earlier rows); a row stops at its first value above the
    bound and the whole scan stops at the first m with the m x m value above
    the bound.  Completeness of that frontier rests on rows being
    nondecreasing in n, which is asserted at every extension step, plus
    nondecreasing diagonal values across rows; either failing raises
    SequenceFrontierError rather than emitting a possibly incomplete list.
    """
    values: set[int] = set()
    m = 1
    prev_diag = None
    while True:
        diag = chocolate_number(m, m, table)
        if prev_diag is not None and diag < prev_diag:
            raise SequenceFrontierError(
                f"diagonal decreased at m={m}: {diag} < {prev_diag}; "
                "frontier cannot certify completeness"
            )
        prev_diag = diag
        if diag > bound:
            break
        prev = None
        n = m
        while True:
            v = chocolate_number(m, n, table)
            if prev is not None and v < prev:
                raise SequenceFrontierError(
                    f"row m={m} not nondecreasing at n={n}: {v} < {prev}; "
                    "frontier cannot certify completeness"
                )
            prev = v
            if v > bound:
                break
            values.add(v)
            n += 1
        m += 1
    return sorted(values)


def save_cache(table: ChocolateTable, path) -> None:
    """Write the table as versioned plain text: header line, then one
    'm n value' line per entry in decimal (diffable and language-neutral)."""
    lines = [CACHE_HEADER]
    for (m, n), v in sorted(table.memo.items()):
        lines.append(f"{m} {n} {v}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def load_cache(path) -> ChocolateTable:
    """Read a cache file back into a fresh table.

    The header must match exactly; malformed lines are reported with their
    line number.  Keys are re-normalized on load so hand-edited files with
    transposed entries still land in canonical form.
    """
    table = ChocolateTable()
    with open(path, encoding="ascii") as fh:
        header = fh.readline().rstrip("\n")
        if header != CACHE_HEADER:
            raise CacheFormatError(
                f"unsupported cache header {header!r} (expected {CACHE_HEADER!r})"
            )
        for lineno, raw in enumerate(fh, start=2):
            line = raw.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise CacheFormatError(
                    f"line {lineno}: expected 'm n value', got {raw.rstrip()!r}"
                )
            try:
                m, n, v = (int(t) for t in parts)
            except ValueError:
                raise CacheFormatError(
                    f"line {lineno}: non-integer field in {raw.rstrip()!r}"
                ) from None
            if m < 1 or n < 1 or v < 1:
                raise CacheFormatError(f"line {lineno}: fields must be positive")
            table.put(m, n, v)
    return table
