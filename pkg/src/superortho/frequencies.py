"""Character families on the torus, handled at the level of frequencies.

A character e^{2 pi i C.x} on T^N is identified with its frequency vector
C in Z^N.  Since every such character has modulus one, the integral of
f_{l1} conj(f_{l2}) f_{l3} conj(f_{l4}) ... vanishes exactly when the
alternating sum C_{l1} - C_{l2} + C_{l3} - ... is a nonzero vector.

Family members are addressed by 0-based index.  A family may hold the same
frequency twice (as distinct members); additive-structure searches can run
either over distinct *values* or over distinct *members*.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, DomainError

TUPLE_BUDGET = 10**7
SEARCH_BUDGET = 10**8

Vector = tuple[int, ...]


@dataclass(frozen=True)
class FrequencyFamily:
    N: int
    freqs: tuple[Vector, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.N < 1:
            raise DomainError(f"dimension must be positive, got {self.N}")
        freqs = tuple(tuple(int(c) for c in f) for f in self.freqs)
        if any(len(f) != self.N for f in freqs):
            raise DomainError(f"every frequency must have {self.N} coordinates")
        object.__setattr__(self, "freqs", freqs)
        if self.labels and len(self.labels) != len(freqs):
            raise DomainError("one label per frequency expected")

    @property
    def L(self) -> int:
        return len(self.freqs)

    def __len__(self) -> int:
        return len(self.freqs)

    def to_json(self) -> str:
        return json.dumps({
            "N": self.N,
            "axes": [f"x{k}" for k in range(1, self.N + 1)],
            "frequencies": [list(f) for f in self.freqs],
            "labels": list(self.labels),
        })

    @classmethod
    def from_json(cls, text: str) -> FrequencyFamily:
        doc = json.loads(text)
        return cls(doc["N"], tuple(tuple(f) for f in doc["frequencies"]), tuple(doc.get("labels", ())))


def _add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def signed_sum(fam: FrequencyFamily, idx: Sequence[int]) -> Vector:
    """C_{idx[0]} - C_{idx[1]} + C_{idx[2]} - ..."""
    acc = [0] * fam.N
    for pos, i in enumerate(idx):
        if not 0 <= i < fam.L:
            raise DomainError(f"index {i} out of range for a family of {fam.L}")
        sign = 1 if pos % 2 == 0 else -1
        for k, c in enumerate(fam.freqs[i]):
            acc[k] += sign * c
    return tuple(acc)


def tuple_vanishes(fam: FrequencyFamily, idx: Sequence[int]) -> bool:
    """Whether the integral of f_{i0} conj(f_{i1}) f_{i2} ... over T^N is zero."""
    if len(idx) % 2:
        raise DomainError(f"tuple length must be even, got {len(idx)}")
    return any(signed_sum(fam, idx))


@dataclass
class STypeResult:
    r: int
    s: int
    passed: bool
    witness: tuple[int, ...] | None
    checked: int

    def to_dict(self) -> dict:
        return {"r": self.r, "s": self.s, "passed": self.passed,
                "witness": list(self.witness) if self.witness else None, "checked": self.checked}


def s_type_tuple_count(L: int, r: int, s: int) -> int:
    need = 2 * r - s  # distinct indices: the 2r-2s head slots plus one per tail pair
    return math.perm(L, need) if need <= L else 0


def check_s_type_iv(fam: FrequencyFamily, r: int, s: int, budget: int = TUPLE_BUDGET) -> STypeResult:
    """Brute-force test of s-Type IV superorthogonality for 2r-tuples.

    Tested tuples: slots 1..2r-2s carry distinct indices, the last s slot
    pairs repeat one index each, and the pair indices are distinct from each
    other and from the head.  Passes iff every such tuple vanishes; on
    failure the first violating tuple (lexicographic in the distinct
    indices) is returned.
    """
    if r < 1 or not 0 <= s <= r:
        raise DomainError(f"need r >= 1 and 0 <= s <= r, got r={r}, s={s}")
    total = s_type_tuple_count(fam.L, r, s)
    if total > budget:
        raise BudgetExceeded(f"{total} tuples exceed the budget of {budget}")
    head = 2 * r - 2 * s
    checked = 0
    for chosen in itertools.permutations(range(fam.L), 2 * r - s):
        idx = chosen[:head] + tuple(i for t in chosen[head:] for i in (t, t))
        checked += 1
        if not tuple_vanishes(fam, idx):
            return STypeResult(r, s, False, idx, checked)
    return STypeResult(r, s, True, None, checked)


@dataclass(frozen=True)
class AdditiveStructure:
    ys: tuple[int, ...]
    zs: tuple[int, ...]
    total: Vector

    def describe(self) -> str:
        return f"ys={list(self.ys)} zs={list(self.zs)} sum={list(self.total)}"


def find_additive_structure(values: Sequence[Sequence[int]], t1: int, t2: int, budget: int = SEARCH_BUDGET,
                            distinct_values: bool = True) -> AdditiveStructure | None:
    """Exhaustive search for y_1+...+y_t1 = z_1+...+z_t2 over distinct entries.

    With ``distinct_values`` (the default) repeated values are collapsed to
    their first occurrence, so the t1+t2 frequencies are pairwise distinct
    as values.  Otherwise the search ranges over distinct positions, and
    two copies of one value may sit on opposite sides.  Indices in the
    result refer to positions in ``values``.
    """
    if t1 < 1 or t2 < 1:
        raise DomainError(f"t1 and t2 must be positive, got {t1}, {t2}")
    vals = [tuple(v) for v in values]
    if distinct_values:
        seen = set()
        pool = []
        for i, v in enumerate(vals):
            if v not in seen:
                seen.add(v)
                pool.append(i)
    else:
        pool = list(range(len(vals)))
    size = t1 + t2
    if size > len(pool):
        return None
    cost = math.comb(len(pool), size) * 2 ** size
    if cost > budget:
        raise BudgetExceeded(f"search cost {cost} exceeds the budget of {budget}")
    zero = (0,) * (len(vals[0]) if vals else 0)
    for combo in itertools.combinations(pool, size):
        whole = zero
        for i in combo:
            whole = _add(whole, vals[i])
        for ys in itertools.combinations(combo, t1):
            ysum = zero
            for i in ys:
                ysum = _add(ysum, vals[i])
            if ysum == tuple(w - y for w, y in zip(whole, ysum)):
                zs = tuple(i for i in combo if i not in ys)
                return AdditiveStructure(ys, zs, ysum)
    return None


def kth_coord_values(k: int) -> list[Fraction]:
    """Unscaled members of the k-th block: 2^j (j<k), 2^k+1-2^-k, 2^j+2^-j (j<=k)."""
    return ([Fraction(2) ** j for j in range(1, k)]
            + [Fraction(2) ** k + 1 - Fraction(1, 2 ** k)]
            + [Fraction(2) ** j + Fraction(1, 2 ** j) for j in range(1, k + 1)])


def verify_kth_coord(k: int) -> bool:
    """First k block members sum to the last k, and every member times 2^k is an integer."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    vals = [v * 2 ** k for v in kth_coord_values(k)]
    return sum(vals[:k]) == sum(vals[k:]) and all(v.denominator == 1 for v in vals)


def _axis(N: int, k: int, c: int) -> Vector:
    v = [0] * N
    v[k - 1] = c
    return tuple(v)


def build_example_family(r: int, s0: int, N: int) -> FrequencyFamily:
    """Family that is s0-Type IV for 2r-tuples but no other s-Type IV (s < r).

    For each axis k in (r-s0, N] the block has 2k frequencies along x_k:
    2^j 2^k (j < k), (2^k+1-2^-k) 2^k and (2^j+2^-j) 2^k (j <= k), all
    integers.  Then come two copies of {2^j e_1 : j <= r-s0-1}.
    """
    if r < 1 or not 0 <= s0 <= r - 1:
        raise DomainError(f"need r >= 1 and 0 <= s0 <= r-1, got r={r}, s0={s0}")
    if N < r:
        raise DomainError(f"need N >= r, got N={N}, r={r}")
    freqs, labels = [], []
    for k in range(r - s0 + 1, N + 1):
        scale = 2 ** k
        for j in range(1, k):
            freqs.append(_axis(N, k, 2 ** j * scale))
            labels.append(f"B{k}:2^{j}")
        freqs.append(_axis(N, k, (2 ** k + 1) * scale - 1))
        labels.append(f"B{k}:2^{k}+1-2^-{k}")
        for j in range(1, k + 1):
            freqs.append(_axis(N, k, 2 ** j * scale + 2 ** (k - j)))
            labels.append(f"B{k}:2^{j}+2^-{j}")
    for copy in ("a", "b"):
        for j in range(1, r - s0):
            freqs.append(_axis(N, 1, 2 ** j))
            labels.append(f"B{copy}:2^{j}")
    return FrequencyFamily(N, tuple(freqs), tuple(labels))


@dataclass
class ExampleReport:
    r: int
    s0: int
    N: int
    L: int
    structures: list[dict] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"r": self.r, "s0": self.s0, "N": self.N, "L": self.L,
                "structures": self.structures, "failures": self.failures}


def verify_example_properties(r: int, s0: int, N: int, budget: int = SEARCH_BUDGET) -> ExampleReport:
    """Check which (t, t)-additive structures the example family contains.

    Expected: one for every t in [r] except t = r - s0, where there is none.
    Existence is judged over members (the two copies of the axis-1 block
    count as distinct members); the search over distinct values is
    reported alongside.
    """
    fam = build_example_family(r, s0, N)
    report = ExampleReport(r, s0, N, fam.L)
    for t in range(1, r + 1):
        member = find_additive_structure(fam.freqs, t, t, budget, distinct_values=False)
        value = find_additive_structure(fam.freqs, t, t, budget, distinct_values=True)
        expected = t != r - s0
        report.structures.append({
            "t": t,
            "expected": expected,
            "member_witness": member.describe() if member else None,
            "value_witness": value.describe() if value else None,
        })
        if expected and member is None:
            report.failures.append(f"no ({t},{t})-structure found")
        if not expected and (member is not None or value is not None):
            report.failures.append(f"unexpected ({t},{t})-structure: {(member or value).describe()}")
    return report
