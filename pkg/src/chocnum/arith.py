"""Exact integer utilities shared by every module.

Everything here is pure, stateless and arbitrary-precision: binomials,
factorials, p-adic valuations, trial-division factoring with a deterministic
Miller-Rabin cofactor check, Legendre symbols, and a factorial-divisibility
test that never builds the factorial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

# Fixed witness set is a deterministic primality test below this bound.
MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

DEFAULT_TRIAL_BOUND = 10**6


class CofactorStatus(Enum):
    UNIT = "unit"
    PROBABLE_PRIME = "probable_prime"
    COMPOSITE_UNRESOLVED = "composite_unresolved"


@dataclass(frozen=True)
class Factorization:
    """Prime factorization plus an explicit leftover cofactor.

    ``factors`` holds (prime, exponent) pairs sorted strictly increasing by
    prime; every listed prime is certified for its size.  ``cofactor`` is 1
    when the value was fully factored, otherwise the unfactored remainder,
    classified by ``cofactor_status``.
    """

    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1
    cofactor_status: CofactorStatus = CofactorStatus.UNIT

    def value(self) -> int:
        v = self.cofactor
        for p, e in self.factors:
            v *= p**e
        return v

    def is_complete(self) -> bool:
        return self.cofactor == 1

    def __str__(self) -> str:
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if self.cofactor != 1:
            tag = "?" if self.cofactor_status is CofactorStatus.COMPOSITE_UNRESOLVED else "(prp)"
            parts.append(f"{self.cofactor}{tag}")
        return " * ".join(parts) if parts else "1"


def factorial(n: int) -> int:
    """n! exactly; rejects negative n."""
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """C(n, k) exactly, with the summation-friendly convention that any
    k outside [0, n] yields 0 rather than an error."""
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def nu_p(value: int, p: int) -> int:
    """Largest e with p^e dividing value.  value must be >= 1 (the valuation
    of 0 would be infinite) and p must be prime."""
    if value < 1:
        raise ValueError(f"nu_p requires value >= 1, got {value}")
    if not is_prime(p):
        raise ValueError(f"nu_p requires a prime p, got {p}")
    e = 0
    while value % p == 0:
        value //= p
        e += 1
    return e


def _miller_rabin(n: int, witnesses=MR_WITNESSES) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in witnesses:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality via the fixed Miller-Rabin witness set.

    Deterministic for n below MR_DETERMINISTIC_BOUND; above that no
    counterexamples are known but the answer is only "probably prime".
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    return _miller_rabin(n)


def factor(value: int, trial_bound: int = DEFAULT_TRIAL_BOUND) -> Factorization:
    """Trial-divide out all primes <= trial_bound, then classify whatever is
    left with the deterministic Miller-Rabin check.  Cofactors at or above the
    deterministic range are flagged rather than mis-certified."""
    if value < 1:
        raise ValueError(f"factor requires value >= 1, got {value}")
    if trial_bound < 2:
        raise ValueError("trial_bound must be >= 2")
    factors: list[tuple[int, int]] = []
    rem = value
    d = 2
    while d <= trial_bound and d * d <= rem:
        if rem % d == 0:
            e = 0
            while rem % d == 0:
                rem //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if rem == 1:
        return Factorization(tuple(factors))
    if rem <= trial_bound * trial_bound:
        # smallest factor of rem exceeds trial_bound, so rem is prime
        factors.append((rem, 1))
        return Factorization(tuple(factors))
    if rem < MR_DETERMINISTIC_BOUND:
        if _miller_rabin(rem):
            factors.append((rem, 1))
            return Factorization(tuple(factors))
        return Factorization(tuple(factors), rem, CofactorStatus.COMPOSITE_UNRESOLVED)
    status = (
        CofactorStatus.PROBABLE_PRIME
        if _miller_rabin(rem)
        else CofactorStatus.COMPOSITE_UNRESOLVED
    )
    return Factorization(tuple(factors), rem, status)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a | p) for odd prime p: +1 for a nonzero square mod p,
    -1 for a nonsquare, 0 when p divides a."""
    if p == 2:
        raise ValueError("legendre symbol requires an odd prime")
    if not is_prime(p):
        raise ValueError(f"legendre symbol requires a prime modulus, got {p}")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def nu_p_factorial(N: int, p: int) -> int:
    """Valuation of N! at prime p by summing floor(N / p^i)."""
    if N < 0:
        raise ValueError("N must be >= 0")
    total = 0
    q = p
    while q <= N:
        total += N // q
        q *= p
    return total


def divides_factorial(k: int, N: int) -> bool:
    """Whether k divides N!, decided from the factorization of k and the
    valuation formula for N! -- the factorial itself is never computed.

    Fails if k cannot be fully factored (unresolved cofactor).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if N < 0:
        raise ValueError("N must be >= 0")
    f = factor(k)
    if not f.is_complete():
        raise ValueError(
            f"cannot decide divisibility: {k} has unresolved cofactor {f.cofactor}"
        )
    return all(nu_p_factorial(N, p) >= e for p, e in f.factors)
