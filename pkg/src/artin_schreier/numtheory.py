"""Exact integer number theory: p-adic valuations, trial-division factoring,
Legendre symbols.

Everything here works on Python ints, so there is no overflow anywhere.
"""

from dataclasses import dataclass
from math import isqrt

__all__ = ['Factorization', 'valuation', 'is_prime', 'factor', 'legendre_symbol', 'jacobi_from_factors']

MAX_FACTOR_INPUT = 2**63


@dataclass(frozen=True)
class Factorization:
    """Canonical prime factorization: ``factors`` is a tuple of ``(prime, multiplicity)``
    with strictly increasing primes."""

    value: int
    factors: tuple

    def __post_init__(self):
        prod = 1
        last = 1
        for t, a in self.factors:
            if t <= last or a < 1 or not is_prime(t):
                raise ValueError(f'invalid factor ({t}, {a})')
            last = t
            prod *= t**a
        if prod != self.value:
            raise ValueError('factors do not multiply to value')

    def primes(self):
        return [t for t, _ in self.factors]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def valuation(t, n):
    """Return the largest k with t**k dividing n."""
    if t < 2:
        raise ValueError('base of valuation must be at least 2')
    if n < 1:
        raise ValueError('valuation needs a positive integer')
    k = 0
    while n % t == 0:
        n //= t
        k += 1
    return k


def is_prime(n):
    """Deterministic trial-division primality test (desk-scale inputs)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def factor(n):
    """Factor 1 <= n <= 2**63 by trial division up to sqrt(n)."""
    if n < 1:
        raise ValueError('can only factor positive integers')
    if n > MAX_FACTOR_INPUT:
        raise ValueError('input beyond trial-division range')
    value = n
    factors = []
    for t in (2, 3):
        a = 0
        while n % t == 0:
            n //= t
            a += 1
        if a:
            factors.append((t, a))
    d = 5
    step = 2
    while d <= isqrt(n):
        if n % d == 0:
            a = 0
            while n % d == 0:
                n //= d
                a += 1
            factors.append((d, a))
        d += step
        step = 6 - step
    if n > 1:
        factors.append((n, 1))
    return Factorization(value, tuple(factors))


def legendre_symbol(a, t):
    """Legendre symbol (a/t) for an odd prime t, via Euler's criterion."""
    if t < 3 or t % 2 == 0 or not is_prime(t):
        raise ValueError(f'{t} is not an odd prime')
    s = pow(a % t, (t - 1) // 2, t)
    return -1 if s == t - 1 else s


def jacobi_from_factors(a, fac):
    """Product of Legendre symbols (a/t)^k over the odd part of a factorization."""
    s = 1
    for t, k in fac:
        if t == 2:
            continue
        s *= legendre_symbol(a, t)**k
    return s
