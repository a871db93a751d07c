"""Small number-theory helpers: deterministic primality, divisors, totients, inverses."""

from __future__ import annotations


# Bases that make Miller-Rabin exact for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def prev_prime(x: int) -> int | None:
    """Largest prime <= x, or None."""
    if x < 2:
        return None
    if x == 2:
        return 2
    q = x if x % 2 else x - 1
    while q >= 3:
        if is_prime(q):
            return q
        q -= 2
    return 2


def next_prime(x: int) -> int:
    """Smallest prime >= x."""
    q = max(x, 2)
    while not is_prime(q):
        q += 1
    return q


def smallest_prime_factor(m: int) -> int:
    """Trial division; returns m itself for primes and 1 for m == 1."""
    if m < 2:
        return m
    f = 2
    while f * f <= m:
        if m % f == 0:
            return f
        f += 1
    return m


def divisors(m: int) -> list[int]:
    small, large = [], []
    f = 1
    while f * f <= m:
        if m % f == 0:
            small.append(f)
            if f * f != m:
                large.append(m // f)
        f += 1
    return small + large[::-1]


def totient(m: int) -> int:
    result, rest, f = m, m, 2
    while f * f <= rest:
        if rest % f == 0:
            while rest % f == 0:
                rest //= f
            result -= result // f
        f += 1
    if rest > 1:
        result -= result // rest
    return result


def modinv(a: int, m: int) -> int:
    """Inverse of a modulo m by the extended Euclidean algorithm."""
    old_r, r = a % m, m
    old_s, s = 1, 0
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
    if old_r != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return old_s % m
