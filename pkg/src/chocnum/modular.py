"""Residue arithmetic for the 2 x n break counts and the hypergeometric
numerator products, plus the machinery that scans them: Pascal rows mod m,
divisibility-propagation certificates, the forced mod-3 pattern, eventual
period detection, and the three-conjecture scan harness.

Residues are always normalized to [0, m).  The long-prefix computations are
vectorized with numpy (int64 while the modulus allows exact products,
object dtype beyond that) because the prefix cost is quadratic in n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import binomial, divides_factorial, is_prime

# products of two residues must stay exact in int64
_INT64_SAFE_MODULUS = 3_037_000_499

CONSISTENT = "CONSISTENT"
INCONSISTENT = "INCONSISTENT"
UNRESOLVED = "UNRESOLVED"


class ModContext:
    """One Pascal-triangle row reduced mod a fixed modulus.

    Row r holds C(r, 0..r) mod modulus and advances one index at a time via
    the Pascal identity in residue arithmetic.  A context is cheap to advance
    but stateful, so it must not be shared across concurrent scans.
    """

    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {modulus}")
        self.modulus = modulus
        dtype = np.int64 if modulus <= _INT64_SAFE_MODULUS else object
        self._row = np.array([1 % modulus], dtype=dtype)
        self.row_index = 0

    @property
    def pascal_row(self) -> list[int]:
        return [int(x) for x in self._row]

    def advance(self) -> None:
        row = self._row
        new = np.empty(len(row) + 1, dtype=row.dtype)
        new[0] = row[0]
        new[-1] = row[-1]
        if len(row) > 1:
            new[1:-1] = (row[:-1] + row[1:]) % self.modulus
        self._row = new
        self.row_index += 1

    def advance_to(self, r: int) -> None:
        if r < self.row_index:
            raise ValueError(f"cannot rewind from row {self.row_index} to {r}")
        while self.row_index < r:
            self.advance()

    def binomial(self, k: int) -> int:
        """C(row_index, k) mod modulus, with the same out-of-range-is-zero
        convention as the exact binomial."""
        if k < 0 or k > self.row_index:
            return 0
        return int(self._row[k])


def chocolate2_mod(n_max: int, m: int) -> list[int]:
    """Residues of the 2 x n break counts B_1..B_n_max mod m, computed
    entirely in residue arithmetic.

    The factorial term is a running product that sticks at 0 once it hits 0;
    the binomial weights come from a Pascal row advanced two steps per n.
    Memory stays O(n_max): the residue vector plus one row of length 2n.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    ctx = ModContext(m)
    dtype = ctx._row.dtype
    out = np.zeros(n_max + 1, dtype=dtype)
    out[1] = 1 % m
    fact = 1 % m  # (2n-2)! mod m, maintained incrementally
    for n in range(2, n_max + 1):
        ctx.advance()
        ctx.advance()
        row = ctx._row  # row 2n-2
        if fact:
            fact = fact * ((2 * n - 3) % m) % m * ((2 * n - 2) % m) % m
        weights = row[1 : 2 * n - 2 : 2]  # C(2n-2, 2i-1), i = 1..n-1
        vals = out[1:n] * out[n - 1 : 0 : -1] % m
        s = int((weights * vals % m).sum()) % m
        out[n] = (fact + s) % m
    return [int(x) for x in out[1:]]


def hyper_numerators_mod(n_max: int, m: int) -> list[int]:
    """Residues mod m of the running products prod_{i<=n} ((4i-5)^2 - 5),
    the numerators of the rearranged hypergeometric series.  Once a factor
    kills the product mod m, the tail is filled with zeros directly."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    out = []
    x = 1 % m
    for i in range(1, n_max + 1):
        x = x * (((4 * i - 5) ** 2 - 5) % m) % m
        out.append(x)
        if x == 0:
            out.extend([0] * (n_max - i))
            break
    return out


@dataclass(frozen=True)
class PeriodReport:
    """Outcome of eventual-period detection on a residue sequence.

    When resolved and not eventually_zero, every term after the preperiod
    repeats with the stated period across the observed evidence, the
    periodic tail covers at least 3 periods and at least half the evidence,
    and the period is minimal among the divisor-checked candidates.  When
    eventually_zero, everything after the preperiod is 0 and period is 1.
    Unresolved reports are a valid outcome, not an error.
    """

    resolved: bool
    preperiod: int | None
    period: int | None
    eventually_zero: bool
    evidence_length: int


def detect_eventual_period(
    seq,
    candidate_periods=None,
    *,
    min_cycles: int = 3,
    min_tail_ratio: float = 0.5,
) -> PeriodReport:
    """Find (preperiod, period) for an eventually periodic residue sequence.

    An all-zero tail is reported as eventually_zero before any period search.
    Caller-supplied candidates (say, divisors of p(p-1)) are tried first and
    refined to the smallest fitting divisor; otherwise every feasible length
    (up to evidence/min_cycles, a third at the defaults) is tried in
    increasing order, so the first fit is minimal.  A fit must leave a
    periodic tail of at least ``min_cycles`` periods covering at least
    ``min_tail_ratio`` of the evidence -- below that the report comes back
    unresolved rather than overclaiming.
    """
    seq = list(seq)
    L = len(seq)
    if L < 8:
        raise ValueError(f"need at least 8 terms of evidence, got {L}")
    arr = np.asarray(seq)

    def tail_ok(tail: int, period: int) -> bool:
        return tail >= min_cycles * period and tail >= min_tail_ratio * L

    # zero tail first: a dying sequence is not "period 1"
    nonzero = np.flatnonzero(arr != 0)
    t = int(nonzero[-1]) + 1 if nonzero.size else 0
    if t < L and tail_ok(L - t, 1):
        return PeriodReport(True, t, 1, True, L)

    def fit(period: int) -> int | None:
        mism = np.flatnonzero(arr[:-period] != arr[period:])
        pre = int(mism[-1]) + 1 if mism.size else 0
        return pre if tail_ok(L - pre, period) else None

    # a fit needs a tail of min_cycles periods, so longer periods are hopeless
    max_period = L // max(min_cycles, 1)
    if candidate_periods:
        for cand in sorted({c for c in candidate_periods if 1 <= c <= max_period}):
            pre = fit(cand)
            if pre is None:
                continue
            for d in range(1, cand):
                if cand % d == 0:
                    pre_d = fit(d)
                    if pre_d is not None:
                        return PeriodReport(True, pre_d, d, False, L)
            return PeriodReport(True, pre, cand, False, L)
    for period in range(1, max_period + 1):
        pre = fit(period)
        if pre is not None:
            return PeriodReport(True, pre, period, False, L)
    return PeriodReport(False, None, None, False, L)


def zero_tail_prime(p: int) -> bool:
    """Whether the hypergeometric numerator products mod p die out to an
    all-zero tail: exactly for p in {2, 5} and primes with 5 a square mod p,
    i.e. p = +-1 mod 5."""
    if not is_prime(p):
        raise ValueError(f"expected a prime, got {p}")
    return p in (2, 5) or p % 5 in (1, 4)


def persistent_divisor_check(k: int, n: int, b_mod) -> bool:
    """Certificate that k divides every 2 x j break count from j = n on.

    True iff k divides B_i for every i in the window floor((n+1)/2) .. n-1
    and k divides (2n-2)!.  Under those hypotheses every term of the
    recursion for B_j, j >= n, is divisible by k, so divisibility propagates
    forever.  ``b_mod`` must hold residues of B_1..B_L mod k with L >= n-1.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if len(b_mod) < n - 1:
        raise ValueError(
            f"residues cover B_1..B_{len(b_mod)} but the window needs B_{n - 1}"
        )
    window = range((n + 1) // 2, n)
    return all(b_mod[i - 1] == 0 for i in window) and divides_factorial(k, 2 * n - 2)


def first_mod3_violation(n_max: int) -> int | None:
    """First n in 2..n_max where the residue of the 2 x n count mod 3
    deviates from the forced pattern (1 when n = 2 mod 3, else 2), or None
    when the whole range conforms."""
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    residues = chocolate2_mod(n_max, 3)
    for n in range(2, n_max + 1):
        expected = 1 if n % 3 == 2 else 2
        if residues[n - 1] != expected:
            return n
    return None


def mod3_pattern_check(n_max: int) -> bool:
    """True iff the 2 x n break counts follow the forced mod-3 pattern for
    all 2 <= n <= n_max."""
    return first_mod3_violation(n_max) is None


def binom_sum_1_mod6(n: int) -> int:
    """(C(n,1) + C(n,7) + ... + C(n,n-1)) mod 3 for n = 2 mod 6, n > 2;
    the mod-3 pattern proof needs this to be 1 in that range."""
    if n <= 2 or n % 6 != 2:
        raise ValueError(f"n must be > 2 with n = 2 mod 6, got {n}")
    return sum(binomial(n, i) for i in range(1, n, 6)) % 3


def binom_sum_5_mod6(n: int) -> int:
    """(C(n,5) + C(n,11) + ... + C(n,n-5)) mod 3 for n = 4 mod 6, n > 4;
    the mod-3 pattern proof needs this to be 0 in that range."""
    if n <= 4 or n % 6 != 4:
        raise ValueError(f"n must be > 4 with n = 4 mod 6, got {n}")
    return sum(binomial(n, i) for i in range(5, n - 4, 6)) % 3


@dataclass(frozen=True)
class ScanRecord:
    """One line of a conjecture scan.  Statuses mean: CONSISTENT -- nothing
    in the evidence contradicts the claim; INCONSISTENT -- the evidence
    certifiably contradicts it; UNRESOLVED -- the evidence is ambiguous.
    A scan never claims to settle an open statement."""

    conjecture: int
    modulus: int
    n_max: int
    status: str
    preperiod: int | None
    period: int | None
    notes: str

    def as_dict(self) -> dict:
        return {
            "conjecture": self.conjecture,
            "modulus": self.modulus,
            "n_max": self.n_max,
            "status": self.status,
            "preperiod": self.preperiod,
            "period": self.period,
            "notes": self.notes,
        }


def _divisors(n: int) -> list[int]:
    out = []
    for d in range(1, int(math.isqrt(n)) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    return sorted(out)


def _certify_zero_tail(k: int, tail_start: int, residues) -> int | None:
    """Smallest n at which persistent_divisor_check certifies the observed
    zero tail (starting at index tail_start) to be permanent, or None when
    the window cannot fit inside the evidence."""
    L = len(residues)
    n = max(2, 2 * tail_start - 1)
    while not divides_factorial(k, 2 * n - 2):
        n += 1
    if n - 1 > L:
        return None
    return n if persistent_divisor_check(k, n, residues) else None


def _scan_conjecture1(p: int, n_max: int) -> ScanRecord:
    if not is_prime(p):
        raise ValueError(f"conjecture 1 takes primes, got {p}")
    residues = chocolate2_mod(n_max, p)
    predicted = zero_tail_prime(p)
    nz = [i + 1 for i, r in enumerate(residues) if r != 0]
    tail_start = (nz[-1] + 1) if nz else 1
    has_tail = tail_start <= n_max
    cert = _certify_zero_tail(p, tail_start, residues) if has_tail else None

    if has_tail:
        preperiod, period = tail_start - 1, 1
    else:
        preperiod, period = None, None
    if predicted:
        if has_tail and cert is not None:
            notes = (
                f"zero tail from index {tail_start}; persistence certified by "
                f"divisibility window at n={cert}"
            )
        elif has_tail:
            notes = (
                f"trailing zeros from index {tail_start}; window too short to "
                "certify persistence"
            )
        else:
            notes = (
                f"no zero tail within {n_max} terms; predicted tail would start "
                "beyond the evidence"
            )
        return ScanRecord(1, p, n_max, CONSISTENT, preperiod, period, notes)
    if has_tail and cert is not None:
        notes = (
            f"certified persistent zero tail from index {tail_start} "
            "contradicts the classifier"
        )
        return ScanRecord(1, p, n_max, INCONSISTENT, preperiod, period, notes)
    if has_tail:
        notes = (
            f"trailing zeros from index {tail_start} on a classifier-false "
            "prime; cannot certify either way"
        )
        return ScanRecord(1, p, n_max, UNRESOLVED, preperiod, period, notes)
    return ScanRecord(
        1, p, n_max, CONSISTENT, None, None,
        f"no zero tail within {n_max} terms, matching the classifier",
    )


def _scan_conjecture2(m: int, n_max: int) -> ScanRecord:
    residues = chocolate2_mod(n_max, m)
    report = detect_eventual_period(residues)
    if report.resolved and report.eventually_zero:
        notes = f"eventually zero from index {report.preperiod + 1}; evidence only"
        return ScanRecord(2, m, n_max, CONSISTENT, report.preperiod, report.period, notes)
    if report.resolved:
        notes = (
            f"periodic on the evidence with period {report.period} after "
            f"preperiod {report.preperiod}; evidence only"
        )
        return ScanRecord(2, m, n_max, CONSISTENT, report.preperiod, report.period, notes)
    return ScanRecord(
        2, m, n_max, UNRESOLVED, None, None,
        f"no period certified within {n_max} terms at the configured thresholds",
    )


def _scan_conjecture3(p: int, n_max: int) -> ScanRecord:
    if not is_prime(p):
        raise ValueError(f"conjecture 3 takes primes, got {p}")
    if zero_tail_prime(p):
        return ScanRecord(
            3, p, n_max, CONSISTENT, None, None,
            "hypothesis excludes this prime (classifier-true); nothing to test",
        )
    pp1 = p * (p - 1)
    residues = chocolate2_mod(n_max, p)
    candidates = _divisors(pp1) + list(range(pp1, n_max // 3 + 1, pp1))
    report = detect_eventual_period(residues, candidates)
    if report.resolved and not report.eventually_zero:
        period = report.period
        notes = (
            f"minimal observed period {period}, p(p-1)={pp1}; "
            f"p(p-1) divides period: {'yes' if period % pp1 == 0 else 'no'}; "
            f"period divides p(p-1): {'yes' if pp1 % period == 0 else 'no'}"
        )
        return ScanRecord(3, p, n_max, CONSISTENT, report.preperiod, period, notes)
    if report.resolved:
        return ScanRecord(
            3, p, n_max, UNRESOLVED, report.preperiod, report.period,
            "sequence died to zeros, which the hypothesis does not anticipate",
        )
    return ScanRecord(
        3, p, n_max, UNRESOLVED, None, None,
        f"no period certified within {n_max} terms at the configured thresholds",
    )


def conjecture_scan(conjecture: int, moduli, n_max: int) -> list[ScanRecord]:
    """Empirically scan one of the three open statements over the given
    moduli: (1) the zero-tail classification of the 2 x n counts mod p,
    (2) eventual periodicity mod any m, (3) period divisibility by p(p-1)
    for the primes the classifier excludes.  Records report evidence and
    certificates only; no record ever claims to settle a conjecture."""
    if conjecture not in (1, 2, 3):
        raise ValueError(f"conjecture must be 1, 2 or 3, got {conjecture}")
    if n_max < 100:
        raise ValueError(f"n_max must be >= 100 for a meaningful scan, got {n_max}")
    scan = {1: _scan_conjecture1, 2: _scan_conjecture2, 3: _scan_conjecture3}[conjecture]
    return [scan(m, n_max) for m in moduli]
