"""Stirling numbers of the second kind and the falling-factorial identities."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError

_rows: list[list[int]] = [[1]]  # _rows[n][k] = S(n, k), 0 <= k <= n


def _extend(max_n: int) -> None:
    while len(_rows) <= max_n:
        prev = _rows[-1]
        n = len(_rows)
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            row[k] = k * (prev[k] if k < n else 0) + prev[k - 1]
        _rows.append(row)


def stirling2(n: int, k: int) -> int:
    """S(n, k): ways to split an n-set into k nonempty unlabelled blocks."""
    if n < 1 or not 1 <= k <= n:
        raise DomainError(f"S(n, k) needs 1 <= k <= n, got n={n}, k={k}")
    _extend(n)
    return _rows[n][k]


@dataclass(frozen=True)
class StirlingTable:
    max_n: int
    entries: tuple[tuple[int, ...], ...]  # entries[n-1][k-1] = S(n, k)

    @classmethod
    def build(cls, max_n: int) -> StirlingTable:
        if max_n < 1:
            raise DomainError(f"max_n must be positive, got {max_n}")
        _extend(max_n)
        return cls(max_n, tuple(tuple(_rows[n][1:]) for n in range(1, max_n + 1)))

    def __getitem__(self, nk: tuple[int, int]) -> int:
        n, k = nk
        return self.entries[n - 1][k - 1]

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.entries]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "S(n,k)"])
        for n, row in enumerate(self.entries, start=1):
            for k, val in enumerate(row, start=1):
                w.writerow([n, k, val])
        return buf.getvalue()


def falling_factorial(x, n: int):
    """x (x-1) ... (x-n+1); exact for int and Fraction inputs."""
    if n < 1:
        raise DomainError(f"falling factorial needs n >= 1, got {n}")
    out = x
    for i in range(1, n):
        out *= x - i
    return out


def verify_factorial_identity(n: int, xs: Iterable) -> bool:
    """Check sum_k S(n,k) [x]_k == x^n exactly at every sample.

    Both sides are polynomials of degree n, so n+1 distinct samples
    certify the identity as polynomials.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    for x in xs:
        x = Fraction(x)
        lhs = sum(stirling2(n, k) * falling_factorial(x, k) for k in range(1, n + 1))
        if lhs != x ** n:
            return False
    return True


def verify_alternating_identity(n: int) -> int:
    """Return sum_k S(n,k) (-1)^(k-1) (k-1)!.

    Zero for every n >= 2; n = 1 gives 1.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    return sum(stirling2(n, k) * (-1) ** (k - 1) * math.factorial(k - 1) for k in range(1, n + 1))
