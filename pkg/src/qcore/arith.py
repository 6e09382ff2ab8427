"""Small integer helpers: primality, valuations, Legendre symbols."""

import math


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(m):
    """Return (p, N) with m = p**N, or raise ValueError for other moduli."""
    m = int(m)
    if m < 2:
        raise ValueError(f"{m} is not a prime power")
    p = next(d for d in range(2, m + 1) if m % d == 0)
    n = 0
    rest = m
    while rest % p == 0:
        rest //= p
        n += 1
    if rest != 1:
        raise ValueError(f"{m} is not a prime power")
    return p, n


def nu_p(x, p):
    """p-adic valuation of an integer; ``math.inf`` for zero."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = abs(int(x))
    if x == 0:
        return math.inf
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def legendre(a, p):
    """Legendre symbol (a/p) by Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r
