"""Trial-division helpers. All orders handled here are small."""

from __future__ import annotations


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k``, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    (p, k), = f.items()
    return p, k


def is_prime_power(q: int) -> bool:
    return prime_power(q) is not None


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def primes_upto(y: int) -> list[int]:
    if y < 2:
        return []
    mark = bytearray([1]) * (y + 1)
    mark[0] = mark[1] = 0
    for p in range(2, int(y ** 0.5) + 1):
        if mark[p]:
            mark[p * p :: p] = bytearray(len(range(p * p, y + 1, p)))
    return [p for p in range(y + 1) if mark[p]]


def prime_power_factors(n: int) -> list[int]:
    """The prime-power parts of n, ascending: 360 -> [5, 8, 9]."""
    return sorted(p ** k for p, k in factorize(n).items())
