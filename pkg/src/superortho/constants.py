"""Formal constant of the direct square-function inequality.

Integrating the identity with n = 2r slots leaves t^n <= Q(t), where
Q(t) = sum_{alpha <= n-2} C_alpha t^alpha and C_alpha sums |D(P)| over the
partitions P above the bottom with exactly alpha singleton blocks.  This
module computes the C_alpha exactly, isolates the largest root of
t^n - Q(t), and reproduces the cruder closed-form bound K * phi * 2r.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .partitions import PARTITION_BOUND_C

MAX_C_ALPHA_N = 60
GOLDEN_RATIO = (1 + math.sqrt(5)) / 2


@dataclass(frozen=True)
class CoefficientVector:
    n: int
    c: tuple[int, ...]  # c[alpha], 0 <= alpha <= n-2

    def __getitem__(self, alpha: int) -> int:
        if alpha in (self.n - 1, self.n):
            return 0
        return self.c[alpha]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["alpha", "c_alpha"])
        for alpha, val in enumerate(self.c):
            w.writerow([alpha, val])
        return buf.getvalue()


def _type_denominators(m: int, largest: int):
    """Yield prod(part) * prod(multiplicity!) for each partition of m into parts in [2, largest].

    One value per type; parts are chosen from the largest size down with
    their multiplicities, so the denominator builds up incrementally.
    """
    if m == 0:
        yield 1
        return
    for k in range(min(m, largest), 1, -1):
        step = k
        for j in range(1, m // k + 1):
            # step = k^j * j!
            for rest in _type_denominators(m - j * k, k - 1):
                yield step * rest
            step *= k * (j + 1)


@lru_cache(maxsize=None)
def compute_c_alphas(n: int) -> CoefficientVector:
    """Exact C_alpha summed type by type.

    A type with alpha singletons and non-singleton parts (n_i) holds
    n!/(alpha! prod n_i! prod mult!) partitions, each with |D| = prod (n_i-1)!,
    so it contributes n!/(alpha! prod n_i prod mult!).
    """
    if n < 2 or n % 2:
        raise DomainError(f"n must be a positive even integer, got {n}")
    if n > MAX_C_ALPHA_N:
        raise DomainError(f"n limited to {MAX_C_ALPHA_N}, got {n}")
    c = []
    for alpha in range(n - 1):
        top = math.factorial(n) // math.factorial(alpha)
        c.append(sum(top // d for d in _type_denominators(n - alpha, n - alpha)))
    return CoefficientVector(n, tuple(c))


def reciprocal_type_sums(max_m: int) -> list[Fraction]:
    """out[m] = sum over partitions of m into parts >= 2 of prod 1/part.

    Coefficients of prod_{k>=2} 1/(1 - x^k/k), expanded one part size at a time.
    """
    out = [Fraction(0)] * (max_m + 1)
    out[0] = Fraction(1)
    for k in range(2, max_m + 1):
        inv = Fraction(1, k)
        for i in range(k, max_m + 1):
            out[i] += out[i - k] * inv
    return out


def reciprocal_type_sum(m: int) -> Fraction:
    if m < 2:
        raise DomainError(f"m must be at least 2, got {m}")
    if m > 200:
        raise DomainError(f"m limited to 200, got {m}")
    return reciprocal_type_sums(m)[m]


@dataclass
class SumCheckReport:
    max_m: int
    rows: list[tuple[int, Fraction, bool]]
    first_reaching_one: int | None

    @property
    def failures(self) -> list[int]:
        return [m for m, _, ok in self.rows if not ok]

    def to_dict(self) -> dict:
        return {
            "max_m": self.max_m,
            "rows": [{"m": m, "sum": f"{v.numerator}/{v.denominator}", "ok": ok} for m, v, ok in self.rows],
            "first_reaching_one": self.first_reaching_one,
            "failures": self.failures,
        }


def reciprocal_sum_check(max_m: int = 59, scan_to: int = 200) -> SumCheckReport:
    """Check the reciprocal sum stays below 1 for 2 <= m <= max_m.

    Also scans to ``scan_to`` for the first m where it reaches 1; values
    past 59 are exploratory only.
    """
    if max_m < 2:
        raise DomainError(f"max_m must be at least 2, got {max_m}")
    sums = reciprocal_type_sums(max(max_m, scan_to))
    rows = [(m, sums[m], sums[m] < 1) for m in range(2, max_m + 1)]
    first = next((m for m in range(2, len(sums)) if sums[m] >= 1), None)
    return SumCheckReport(max_m, rows, first)


def k_constant() -> float:
    """e^{pi / (3 sqrt 10)} / 60^{7/240}."""
    return math.exp(math.pi / (3 * math.sqrt(10))) / 60 ** (7 / 240)


def paper_bound_constant(r: int) -> tuple[float, float]:
    """Return (K * phi * 2r, K)."""
    if r < 1:
        raise DomainError(f"r must be positive, got {r}")
    k = k_constant()
    return k * GOLDEN_RATIO * 2 * r, k


def _excess(coeffs: CoefficientVector, t: Fraction) -> Fraction:
    # t^n - Q(t), Horner from the top
    n = coeffs.n
    acc = Fraction(1)
    for alpha in range(n - 1, -1, -1):
        acc = acc * t - coeffs[alpha]
    return acc


def root_enclosure(coeffs: CoefficientVector, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect on exact signs of t^n - Q(t); needs excess(lo) <= 0 < excess(hi)."""
    if _excess(coeffs, lo) > 0 or _excess(coeffs, hi) <= 0:
        raise DomainError(f"[{lo}, {hi}] does not bracket the root")
    while hi - lo > width:
        mid = (lo + hi) / 2
        if _excess(coeffs, mid) <= 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def exact_root_constant(r: int, width: float = 1e-9) -> tuple[float, float]:
    """Enclosure of the unique positive root of t^{2r} - Q(t).

    Q has nonnegative coefficients, so t^{2r} - Q(t) has one sign change
    and hence exactly one positive root; it lies in [1, 4r].
    """
    if not 1 <= r <= 15:
        raise DomainError(f"r must lie in 1..15, got {r}")
    lo, hi = root_enclosure(compute_c_alphas(2 * r), Fraction(1), Fraction(4 * r), Fraction(width))
    return float(lo), float(hi)


def prior_constant(r: int) -> float:
    """sqrt(2 ((2r)! - 1)), the earlier factorial-type constant (float range caps r at 85)."""
    if not 1 <= r <= 85:
        raise DomainError(f"r must lie in 1..85, got {r}")
    return math.sqrt(2 * (math.factorial(2 * r) - 1))


@dataclass
class ConstantReport:
    r: int
    c_alphas: CoefficientVector
    paper_bound: float
    exact_root: tuple[float, float]
    prior_bound: float
    k_const: float
    lower_bound: int = field(init=False)  # p - 1 with p = 2r, the sharp martingale constant

    def __post_init__(self):
        self.lower_bound = 2 * self.r - 1

    @property
    def failures(self) -> list[str]:
        out = []
        if self.exact_root[1] > self.paper_bound:
            out.append("exact root exceeds the closed-form bound")
        if self.paper_bound >= 4 * self.r:
            out.append("closed-form bound is not below 4r")
        return out

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "n": 2 * self.r,
            "C": [str(v) for v in self.c_alphas.c],
            "exact_root": {"lo": self.exact_root[0], "hi": self.exact_root[1]},
            "paper_bound": self.paper_bound,
            "prior_bound": self.prior_bound,
            "k_const": self.k_const,
            "lower_bound": self.lower_bound,
            "failures": self.failures,
        }

    CSV_HEADER = ("r", "C_alpha", "exact_root_lo", "exact_root_hi", "paper_bound", "prior_bound")

    def csv_row(self) -> list:
        return [self.r, ";".join(map(str, self.c_alphas.c)), repr(self.exact_root[0]),
                repr(self.exact_root[1]), repr(self.paper_bound), repr(self.prior_bound)]


def constant_report(r: int) -> ConstantReport:
    bound, k = paper_bound_constant(r)
    return ConstantReport(r, compute_c_alphas(2 * r), bound, exact_root_constant(r), prior_constant(r), k)


@dataclass
class CoeffBoundEntry:
    alpha: int
    c_alpha: int
    exact_ok: bool  # C_alpha < n^(n-alpha)
    analytic_bound: float | None  # C_alpha^(1/(n-alpha)) bound when n - alpha >= cutoff
    analytic_ok: bool | None


@dataclass
class CoeffBoundReport:
    n: int
    cutoff: int
    entries: list[CoeffBoundEntry]

    @property
    def failures(self) -> list[int]:
        return [e.alpha for e in self.entries if e.exact_ok is False or e.analytic_ok is False]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "cutoff": self.cutoff,
            "entries": [{"alpha": e.alpha, "c_alpha": str(e.c_alpha), "exact_ok": e.exact_ok,
                         "analytic_bound": e.analytic_bound, "analytic_ok": e.analytic_ok}
                        for e in self.entries],
            "failures": self.failures,
        }


def verify_coeff_root_bounds(n: int, cutoff: int = 60) -> CoeffBoundReport:
    """Check C_alpha < n^(n-alpha) exactly for every alpha.

    For n - alpha >= cutoff, additionally checks
    C_alpha <= e^{c sqrt m} / m^{7/4} * n!/alpha!  (m = n - alpha)
    and reports the root bound K*n it leads to (in log space).
    """
    coeffs = compute_c_alphas(n)
    k = k_constant()
    entries = []
    for alpha, ca in enumerate(coeffs.c):
        m = n - alpha
        exact_ok = ca < n ** m
        if m < cutoff:
            entries.append(CoeffBoundEntry(alpha, ca, exact_ok, None, None))
        else:
            log_bound = (PARTITION_BOUND_C * math.sqrt(m) - 1.75 * math.log(m)
                         + math.lgamma(n + 1) - math.lgamma(alpha + 1))
            ok = math.log(ca) <= log_bound and math.log(ca) / m <= math.log(k * n)
            entries.append(CoeffBoundEntry(alpha, ca, exact_ok, k * n, ok))
    return CoeffBoundReport(n, cutoff, entries)


def golden_ratio_lemma(max_n: int = 50, eps: Fraction = Fraction(1, 10**6)) -> list[int]:
    """Return the n in 2..max_n where s^n > sum_{alpha<=n-2} s^alpha fails.

    s is a rational just above the golden ratio: (1 + sqrt 5)/2 rounded up
    to 6 decimals, plus ``eps``.  An empty list means the lemma holds.
    """
    s = Fraction(1618034, 10**6) + eps
    if not s * s > s + 1:
        raise DomainError("s does not satisfy s^2 > s + 1")
    bad = []
    for n in range(2, max_n + 1):
        if not s ** n > sum(s ** a for a in range(n - 1)):
            bad.append(n)
    return bad
