"""Chain-parity coefficients D(p1, p2) on the set-partition lattice.

D(p1, p2) is the number of odd chains minus the number of even chains
whose finest element is p1 and coarsest element is p2, parity being the
number of elements in the chain.  Four routes are provided:

* ``count_chains``  -- brute-force chain counting (the oracle)
* ``d_closed_form`` -- (-1)^(n-m) * prod (n_i - 1)! for the bottom-to-P case
* ``d_recursion``   -- the Stirling-number recursion over types
* ``d_good_pair``   -- the sign shortcut for partitions with blocks of size <= 2

``d_general`` extends the closed form to arbitrary intervals by factoring
over the blocks of p2.  It is only trusted because the test suite checks it
against ``count_chains``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .partitions import (
    PartitionType,
    SetPartition,
    enumerate_coarsenings,
    refines,
)
from .stirling import stirling2

MAX_CHAIN_N = 8


@dataclass(frozen=True)
class ChainStats:
    odd: int
    even: int

    @property
    def d(self) -> int:
        return self.odd - self.even

    def to_dict(self) -> dict[str, str]:
        return {"odd": str(self.odd), "even": str(self.even), "d": str(self.d)}


@dataclass(frozen=True)
class CoefficientValue:
    value: int
    source: str  # "brute-force" | "closed-form" | "recursion" | "good-pair" | "block-product"

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


def _require_refines(p1: SetPartition, p2: SetPartition) -> None:
    if not refines(p1, p2):
        raise DomainError(f"{p1} does not refine {p2}")


@lru_cache(maxsize=64)
def chain_table(p1: SetPartition) -> dict[SetPartition, ChainStats]:
    """Odd/even chain counts from ``p1`` to every coarsening of ``p1``.

    Partitions are visited from finest to coarsest (by block count); each
    one pushes its counts, with parity flipped, to every strict coarsening.
    """
    if p1.n > MAX_CHAIN_N:
        raise DomainError(f"chain enumeration limited to n <= {MAX_CHAIN_N}, got {p1.n}")
    order = sorted(enumerate_coarsenings(p1), key=len, reverse=True)
    odd = {q: 0 for q in order}
    even = {q: 0 for q in order}
    odd[p1] = 1
    for q in order:
        o, e = odd[q], even[q]
        if not (o or e):
            continue
        for c in enumerate_coarsenings(q):
            if c != q:
                odd[c] += e
                even[c] += o
    return {q: ChainStats(odd[q], even[q]) for q in order}


def count_chains(p1: SetPartition, p2: SetPartition) -> ChainStats:
    _require_refines(p1, p2)
    if p1.n > MAX_CHAIN_N:
        raise DomainError(f"chain enumeration limited to n <= {MAX_CHAIN_N}, got {p1.n}")
    return chain_table(p1)[p2]


def _closed_form(sizes) -> int:
    n = sum(sizes)
    val = (-1) ** (n - len(sizes))
    for s in sizes:
        val *= math.factorial(s - 1)
    return val


def d_closed_form(t: PartitionType) -> CoefficientValue:
    """D(P0, P) for any P whose block sizes are ``t``."""
    return CoefficientValue(_closed_form(t.sizes), "closed-form")


@lru_cache(maxsize=None)
def _recursion(sizes: tuple[int, ...]) -> int:
    if all(s == 1 for s in sizes):
        return 1
    total = 0
    for ks in itertools.product(*(range(1, s + 1) for s in sizes)):
        if ks == sizes:
            continue
        weight = 1
        for s, k in zip(sizes, ks):
            weight *= stirling2(s, k)
        total += weight * _recursion(tuple(sorted(ks, reverse=True)))
    return -total


def d_recursion(t: PartitionType) -> CoefficientValue:
    return CoefficientValue(_recursion(t.sizes), "recursion")


def d_good_pair(p1: SetPartition, p2: SetPartition) -> CoefficientValue:
    if not (p1.is_good and p2.is_good):
        raise DomainError("both partitions must have only blocks of size 1 or 2")
    _require_refines(p1, p2)
    m = p2.count_size(2) - p1.count_size(2)
    return CoefficientValue((-1) ** m, "good-pair")


def d_general(p1: SetPartition, p2: SetPartition) -> CoefficientValue:
    """D(p1, p2) as a product over the blocks of p2.

    For each block B of p2, the blocks of p1 inside B are treated as atoms
    merged into a single block, which is the bottom-to-top problem on
    that many atoms.
    """
    _require_refines(p1, p2)
    atoms_per_block = [0] * len(p2)
    where = {e: i for i, b in enumerate(p2.blocks) for e in b}
    for b in p1.blocks:
        atoms_per_block[where[b[0]]] += 1
    val = 1
    for k in atoms_per_block:
        val *= _closed_form((k,))
    return CoefficientValue(val, "block-product")


def coefficient(p1: SetPartition, p2: SetPartition) -> int:
    """D(p1, p2) via chain counting where feasible, else the block product."""
    if p1.n <= MAX_CHAIN_N:
        return count_chains(p1, p2).d
    return d_general(p1, p2).value
