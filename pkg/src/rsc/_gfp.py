"""Polynomials over a prime field and the small number theory the field
registry needs. Polynomials are coefficient lists, lowest degree first."""

from __future__ import annotations

from typing import List, Sequence

Poly = List[int]


def is_prime(n: int) -> bool:
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


def prime_factors(n: int) -> List[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int):
    """Return ``(p, m)`` with ``q == p**m`` or ``None``."""
    if q < 2:
        return None
    for p in prime_factors(q)[:1]:
        m = 0
        while q % p == 0:
            q //= p
            m += 1
        if q == 1:
            return p, m
    return None


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in fs):
            return g
    raise ValueError(f"no primitive root mod {p}")


def trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> Poly:
    """Remainder of ``a`` modulo ``f`` (``f`` nonzero)."""
    a = [c % p for c in a]
    f = trim(f)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i]
        if c == 0:
            continue
        c = c * inv_lead % p
        shift = i - df
        for j, fj in enumerate(f):
            a[shift + j] = (a[shift + j] - c * fj) % p
    return trim(a[:df]) if df > 0 else []


def poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return poly_mod(out, f, p)


def poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> Poly:
    result: Poly = [1]
    base = poly_mod(a, f, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return trim(out)


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial of degree m over GF(p)."""
    f = trim(f)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    if poly_sub(poly_powmod(x, p**m, f, p), x, p):
        return False
    for r in prime_factors(m):
        h = poly_sub(poly_powmod(x, p ** (m // r), f, p), x, p)
        if len(poly_gcd(f, h, p)) != 1:
            return False
    return True


def is_primitive(f: Sequence[int], p: int) -> bool:
    """True when ``f`` is irreducible and ``x`` generates the multiplicative group."""
    if not is_irreducible(f, p):
        return False
    m = len(trim(f)) - 1
    order = p**m - 1
    if m == 1:
        root = (-f[0]) % p
        return root != 0 and all(pow(root, order // r, p) != 1 for r in prime_factors(order))
    x = [0, 1]
    return all(poly_powmod(x, order // r, f, p) != [1] for r in prime_factors(order))


def first_primitive_poly(p: int, m: int) -> Poly:
    """Lexicographically first monic primitive polynomial of degree ``m``.

    Candidates are ordered by the radix-``p`` value of their low ``m``
    coefficients. Degree 1 uses ``x - g`` with ``g`` the least primitive root.
    """
    if m == 1:
        return [(-primitive_root(p)) % p, 1]
    for code in range(1, p**m):
        low = [(code // p**i) % p for i in range(m)]
        f = low + [1]
        if is_primitive(f, p):
            return f
    raise ValueError(f"no primitive polynomial for p={p}, m={m}")
