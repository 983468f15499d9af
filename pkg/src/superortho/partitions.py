"""Set partitions of [n], their types, the refinement order and p(n).

Set partitions are stored canonically (elements sorted inside each block,
blocks sorted by their minimum) so that ``==`` and ``hash`` coincide with
identity of lattice elements.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import mpmath
from mpmath.libmp import to_rational

from .errors import DomainError

MAX_ENUMERATION_N = 12

# 2*sqrt(zeta(2)) = pi*sqrt(2/3)
PARTITION_BOUND_C = math.pi * math.sqrt(2.0 / 3.0)


@dataclass(frozen=True)
class SetPartition:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"ground set size must be positive, got {self.n}")
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        seen = []
        for b in blocks:
            if not b:
                raise DomainError("empty block")
            seen.extend(b)
        if sorted(seen) != list(range(1, self.n + 1)):
            raise DomainError(f"blocks {blocks} do not partition [1..{self.n}]")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> SetPartition:
        blocks = [tuple(b) for b in blocks]
        if n is None:
            n = sum(len(b) for b in blocks)
        return cls(n, tuple(blocks))

    @classmethod
    def bottom(cls, n: int) -> SetPartition:
        """All singletons, the finest partition."""
        return cls(n, tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def top(cls, n: int) -> SetPartition:
        return cls(n, (tuple(range(1, n + 1)),))

    @classmethod
    def parse(cls, text: str) -> SetPartition:
        """Parse ``"1,3|2|4"``; duplicates and gaps are rejected."""
        text = text.strip()
        if not text:
            raise DomainError("empty partition text")
        blocks = []
        for chunk in text.split("|"):
            try:
                blocks.append(tuple(int(tok) for tok in chunk.split(",")))
            except ValueError:
                raise DomainError(f"malformed block {chunk!r}") from None
        elems = [e for b in blocks for e in b]
        if len(set(elems)) != len(elems):
            raise DomainError(f"duplicate element in {text!r}")
        return cls.from_blocks(blocks)

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, j: int) -> tuple[int, ...]:
        for b in self.blocks:
            if j in b:
                return b
        raise DomainError(f"{j} is not in [1..{self.n}]")

    def count_size(self, size: int) -> int:
        """Number of blocks with exactly ``size`` elements."""
        return sum(1 for b in self.blocks if len(b) == size)

    @property
    def is_good(self) -> bool:
        return all(len(b) <= 2 for b in self.blocks)


@dataclass(frozen=True)
class PartitionType:
    """Multiset of block sizes, stored non-increasing."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(sorted(self.sizes, reverse=True))
        if not sizes or any(s < 1 for s in sizes):
            raise DomainError(f"invalid type {self.sizes}")
        object.__setattr__(self, "sizes", sizes)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def __len__(self) -> int:
        return len(self.sizes)

    def __str__(self) -> str:
        return ",".join(map(str, self.sizes))

    @classmethod
    def parse(cls, text: str) -> PartitionType:
        try:
            return cls(tuple(int(tok) for tok in text.split(",")))
        except ValueError:
            raise DomainError(f"malformed type {text!r}") from None


def _check_enumerable(n: int) -> None:
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise DomainError(f"set-partition enumeration needs 1 <= n <= {MAX_ENUMERATION_N}, got {n}")


def _growth_strings(n: int) -> Iterator[list[int]]:
    # restricted growth strings in lexicographic order
    rgs = [0] * n

    def rec(i: int, top: int) -> Iterator[list[int]]:
        if i == n:
            yield rgs
            return
        for v in range(top + 2):
            rgs[i] = v
            yield from rec(i + 1, max(top, v))

    if n == 0:
        yield []
        return
    yield from rec(1, 0)


def _partitions_of(items: Sequence) -> Iterator[list[list]]:
    """All set partitions of ``items`` as lists of lists, in growth-string order."""
    for rgs in _growth_strings(len(items)):
        groups: list[list] = []
        for item, label in zip(items, rgs):
            if label == len(groups):
                groups.append([])
            groups[label].append(item)
        yield groups


def enumerate_set_partitions(n: int) -> list[SetPartition]:
    _check_enumerable(n)
    return [SetPartition(n, tuple(tuple(g) for g in groups))
            for groups in _partitions_of(range(1, n + 1))]


def refines(p1: SetPartition, p2: SetPartition) -> bool:
    """True iff every block of ``p1`` lies inside some block of ``p2``."""
    if p1.n != p2.n:
        raise DomainError(f"partitions of different ground sets ({p1.n} vs {p2.n})")
    owner = {}
    for idx, b in enumerate(p2.blocks):
        for e in b:
            owner[e] = idx
    return all(len({owner[e] for e in b}) == 1 for b in p1.blocks)


def partition_type(p: SetPartition) -> PartitionType:
    return PartitionType(tuple(len(b) for b in p.blocks))


def enumerate_coarsenings(p: SetPartition) -> list[SetPartition]:
    """Every q with ``refines(p, q)``, ``p`` itself included."""
    _check_enumerable(p.n)
    out = []
    for groups in _partitions_of(p.blocks):
        merged = tuple(tuple(e for b in g for e in b) for g in groups)
        out.append(SetPartition(p.n, merged))
    return out


def integer_partitions(n: int, min_part: int = 1, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` as non-increasing tuples with parts in [min_part, max_part]."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), min_part - 1, -1):
        for rest in integer_partitions(n - first, min_part, first):
            yield (first,) + rest


def enumerate_types(n: int) -> list[PartitionType]:
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    return [PartitionType(sizes) for sizes in integer_partitions(n)]


def count_partitions_of_type(t: PartitionType) -> int:
    """Exact number of set partitions of [n] whose block sizes are ``t``.

    n! / (prod size! * prod multiplicity!)
    """
    denom = 1
    for size in t.sizes:
        denom *= math.factorial(size)
    for mult in Counter(t.sizes).values():
        denom *= math.factorial(mult)
    return math.factorial(t.n) // denom


_p_table = [1]


def partition_function(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence (table grows on demand)."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    while len(_p_table) <= n:
        m = len(_p_table)
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * _p_table[m - g1]
            g2 = g1 + k
            if g2 <= m:
                total += sign * _p_table[m - g2]
            k += 1
        _p_table.append(total)
    return _p_table[n]


def partition_function_upper_bound(n: int) -> float:
    """e^{c sqrt n} / n^{3/4} with c = pi*sqrt(2/3)."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    with mpmath.workdps(30):
        c = mpmath.pi * mpmath.sqrt(mpmath.mpf(2) / 3)
        return float(mpmath.exp(c * mpmath.sqrt(n)) / mpmath.power(n, mpmath.mpf(3) / 4))


@lru_cache(maxsize=None)
def partition_bound_lower_rational(n: int, prec: int = 128) -> Fraction:
    """A rational number guaranteed to be <= e^{c sqrt n}/n^{3/4}.

    Evaluated in interval arithmetic; the left endpoint of the enclosure
    is converted exactly to a dyadic rational.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    iv = mpmath.iv
    old = iv.prec
    iv.prec = prec
    try:
        c = iv.pi * iv.sqrt(iv.mpf(2) / 3)
        val = iv.exp(c * iv.sqrt(n)) / (iv.mpf(n) ** (iv.mpf(3) / 4))
        lo = val._mpi_[0]
    finally:
        iv.prec = old
    num, den = to_rational(lo)
    return Fraction(int(num), int(den))
