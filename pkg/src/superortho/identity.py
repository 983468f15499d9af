"""Exact checks of the distinct-sum / independent-sum identity.

For a partition ``p1`` of the slots [n] and L vectors per slot, the sum of
slot products over *distinct* block indices equals the D-weighted sum, over
every coarsening P of ``p1``, of the *independent* (unrestricted) sums.
Everything here is exact: scalars are Gaussian rationals.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Sequence

import numpy as np

from .chains import coefficient
from .errors import DomainError
from .partitions import SetPartition, enumerate_coarsenings, enumerate_set_partitions


class GaussianRational:
    """re + im*i with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return f"{self.re}+{self.im}i" if self.im >= 0 else f"{self.re}-{-self.im}i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def _rand_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def random_gaussian(rng: random.Random) -> GaussianRational:
    return GaussianRational(_rand_fraction(rng), _rand_fraction(rng))


@dataclass(frozen=True)
class ConjugationPattern:
    flags: tuple[bool, ...]

    @classmethod
    def alternating(cls, n: int) -> ConjugationPattern:
        """Conjugate every even slot (1-based), as in v1 conj(v2) v3 conj(v4) ..."""
        return cls(tuple(j % 2 == 0 for j in range(1, n + 1)))

    @classmethod
    def plain(cls, n: int) -> ConjugationPattern:
        return cls((False,) * n)

    def __len__(self):
        return len(self.flags)


@dataclass(frozen=True)
class ScalarFamily:
    """values[j][l]: the l-th scalar of slot j (both 0-based)."""

    values: tuple[tuple[GaussianRational, ...], ...]

    def __post_init__(self):
        if not self.values or len({len(row) for row in self.values}) != 1 or not self.values[0]:
            raise DomainError("scalar family must be a non-empty rectangular n x L array")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def L(self) -> int:
        return len(self.values[0])

    @classmethod
    def from_values(cls, rows) -> ScalarFamily:
        return cls(tuple(tuple(v if isinstance(v, GaussianRational) else GaussianRational(v) for v in row)
                         for row in rows))

    @classmethod
    def constant(cls, n: int, L: int, value=1) -> ScalarFamily:
        return cls.from_values([[value] * L for _ in range(n)])

    @classmethod
    def random(cls, n: int, L: int, seed: int) -> ScalarFamily:
        rng = random.Random(seed)
        return cls(tuple(tuple(random_gaussian(rng) for _ in range(L)) for _ in range(n)))


def _check_dims(fam: ScalarFamily, pat: ConjugationPattern, p1: SetPartition) -> None:
    if not (fam.n == len(pat) == p1.n):
        raise DomainError(f"dimension mismatch: family n={fam.n}, pattern {len(pat)}, partition n={p1.n}")


def _slot_values(fam: ScalarFamily, pat: ConjugationPattern):
    return [[v.conjugate() if pat.flags[j] else v for v in fam.values[j]] for j in range(fam.n)]


def _block_profiles(slots, blocks) -> dict[tuple[int, ...], list[GaussianRational]]:
    # block -> [prod_{j in block} slot_j(l) for l in range(L)]
    L = len(slots[0])
    out = {}
    for b in blocks:
        if b not in out:
            out[b] = [reduce(lambda acc, j: acc * slots[j - 1][l], b, ONE) for l in range(L)]
    return out


def distinct_sum(fam: ScalarFamily, pat: ConjugationPattern, p1: SetPartition) -> GaussianRational:
    """Sum over injective block-index assignments of the slot product."""
    _check_dims(fam, pat, p1)
    prof = _block_profiles(_slot_values(fam, pat), p1.blocks)
    rows = [prof[b] for b in p1.blocks]
    total = ZERO
    for idx in itertools.permutations(range(fam.L), len(rows)):
        term = ONE
        for row, l in zip(rows, idx):
            term = term * row[l]
        total = total + term
    return total


def independent_sum(fam: ScalarFamily, pat: ConjugationPattern, p: SetPartition) -> GaussianRational:
    """Unrestricted sum, factored as a product of per-block sums."""
    _check_dims(fam, pat, p)
    prof = _block_profiles(_slot_values(fam, pat), p.blocks)
    out = ONE
    for b in p.blocks:
        out = out * sum(prof[b], ZERO)
    return out


@lru_cache(maxsize=None)
def _coarsening_coefficients(p1: SetPartition) -> tuple[tuple[SetPartition, int], ...]:
    return tuple((p, coefficient(p1, p)) for p in enumerate_coarsenings(p1))


def weighted_rhs(fam: ScalarFamily, pat: ConjugationPattern, p1: SetPartition) -> GaussianRational:
    """Sum over coarsenings P of p1 of D(p1, P) times the independent sum over P."""
    _check_dims(fam, pat, p1)
    terms = _coarsening_coefficients(p1)
    blocks = {b for p, _ in terms for b in p.blocks}
    prof = _block_profiles(_slot_values(fam, pat), blocks)
    block_sum = {b: sum(row, ZERO) for b, row in prof.items()}
    total = ZERO
    for p, d in terms:
        term = GaussianRational(d)
        for b in p.blocks:
            term = term * block_sum[b]
        total = total + term
    return total


def first_step_coefficients(p1: SetPartition) -> dict[SetPartition, int]:
    """Expand distinct(p1) into independent sums by repeated replacement.

    distinct(P) = independent(P) - sum_{Q > P} distinct(Q), applied until
    no distinct sum is left.  Returns the coefficient of each independent(P).
    """
    memo: dict[SetPartition, dict[SetPartition, int]] = {}

    def expand(p):
        if p in memo:
            return memo[p]
        out = {p: 1}
        for q in enumerate_coarsenings(p):
            if q == p:
                continue
            for r, c in expand(q).items():
                out[r] = out.get(r, 0) - c
        memo[p] = out
        return out

    return {p: c for p, c in expand(p1).items() if c}


def verify_first_step(fam: ScalarFamily, pat: ConjugationPattern, p1: SetPartition) -> bool:
    """distinct(p1) == independent(p1) - sum over strict coarsenings of their distinct sums."""
    rhs = independent_sum(fam, pat, p1)
    for q in enumerate_coarsenings(p1):
        if q != p1:
            rhs = rhs - distinct_sum(fam, pat, q)
    return distinct_sum(fam, pat, p1) == rhs


@dataclass
class IdentityReport:
    n: int
    L: int
    p1: SetPartition
    trials: int
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"n": self.n, "L": self.L, "p1": str(self.p1), "trials": self.trials,
                "failures": self.failures}


def trial_seeds(seed: int, trials: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(63) for _ in range(trials)]


def verify_identity(n: int, L: int, p1: SetPartition | None = None, trials: int = 25, seed: int = 0,
                    pattern: ConjugationPattern | None = None) -> IdentityReport:
    """Draw ``trials`` seeded random families and compare both sides exactly."""
    if p1 is None:
        p1 = SetPartition.bottom(n)
    if p1.n != n:
        raise DomainError(f"partition is on [{p1.n}], expected [{n}]")
    if pattern is None:
        pattern = ConjugationPattern.alternating(n)
    report = IdentityReport(n, L, p1, trials)
    for ts in trial_seeds(seed, trials):
        fam = ScalarFamily.random(n, L, ts)
        lhs = distinct_sum(fam, pattern, p1)
        rhs = weighted_rhs(fam, pattern, p1)
        if lhs != rhs:
            report.failures.append({"seed": ts, "lhs": str(lhs), "rhs": str(rhs)})
    return report


@dataclass(frozen=True)
class TensorValue:
    shape: tuple[int, ...]
    entries: np.ndarray  # dtype=object, GaussianRational entries

    def __post_init__(self):
        if tuple(self.entries.shape) != tuple(self.shape):
            raise DomainError(f"entries of shape {self.entries.shape} do not match {self.shape}")

    @classmethod
    def zeros(cls, shape) -> TensorValue:
        arr = np.empty(shape, dtype=object)
        arr.fill(ZERO)
        return cls(tuple(shape), arr)

    def __eq__(self, other):
        if not isinstance(other, TensorValue):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.entries.flat, other.entries.flat))

    def __add__(self, other: TensorValue) -> TensorValue:
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} vs {other.shape}")
        return TensorValue(self.shape, self.entries + other.entries)

    def scale(self, c) -> TensorValue:
        return TensorValue(self.shape, self.entries * GaussianRational(c))


def _outer(vectors: Sequence[Sequence[GaussianRational]]) -> np.ndarray:
    out = np.array(vectors[0], dtype=object)
    for v in vectors[1:]:
        out = np.multiply.outer(out, np.array(v, dtype=object))
    return out


def random_vectors(n: int, L: int, dims: Sequence[int], seed: int):
    """vectors[j][l]: the l-th vector (length dims[j]) of slot j."""
    if len(dims) != n:
        raise DomainError(f"need {n} axis dimensions, got {len(dims)}")
    rng = random.Random(seed)
    return [[tuple(random_gaussian(rng) for _ in range(dims[j])) for _ in range(L)] for j in range(n)]


def _slot_tensor(vectors, p: SetPartition, assignment: dict) -> np.ndarray:
    return _outer([vectors[j - 1][assignment[p.block_of(j)]] for j in range(1, p.n + 1)])


def tensor_distinct_sum(vectors, p1: SetPartition) -> TensorValue:
    L = len(vectors[0])
    shape = tuple(len(vectors[j][0]) for j in range(p1.n))
    acc = TensorValue.zeros(shape)
    for idx in itertools.permutations(range(L), len(p1)):
        acc = acc + TensorValue(shape, _slot_tensor(vectors, p1, dict(zip(p1.blocks, idx))))
    return acc


def tensor_independent_sum(vectors, p: SetPartition) -> TensorValue:
    L = len(vectors[0])
    shape = tuple(len(vectors[j][0]) for j in range(p.n))
    acc = TensorValue.zeros(shape)
    for idx in itertools.product(range(L), repeat=len(p)):
        acc = acc + TensorValue(shape, _slot_tensor(vectors, p, dict(zip(p.blocks, idx))))
    return acc


def tensor_weighted_rhs(vectors, p1: SetPartition) -> TensorValue:
    shape = tuple(len(vectors[j][0]) for j in range(p1.n))
    acc = TensorValue.zeros(shape)
    for p, d in _coarsening_coefficients(p1):
        acc = acc + tensor_independent_sum(vectors, p).scale(d)
    return acc


@dataclass
class TensorReport:
    n: int
    L: int
    dims: tuple[int, ...]
    seed: int
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"n": self.n, "L": self.L, "dims": list(self.dims), "seed": self.seed,
                "checked": self.checked, "failures": self.failures}


def verify_identity_tensor(n: int, L: int, dims: Sequence[int], seed: int = 0, vectors=None) -> TensorReport:
    """Entrywise comparison of both sides, as explicit tensors, for every p1 of [n]."""
    if n > 4 or L > 3 or any(not 1 <= d <= 3 for d in dims):
        raise DomainError("tensor check limited to n <= 4, L <= 3, axis dimensions in 1..3")
    if vectors is None:
        vectors = random_vectors(n, L, dims, seed)
    report = TensorReport(n, L, tuple(dims), seed)
    for p1 in enumerate_set_partitions(n):
        report.checked += 1
        if tensor_distinct_sum(vectors, p1) != tensor_weighted_rhs(vectors, p1):
            report.failures.append(str(p1))
    return report
