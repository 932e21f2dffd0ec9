"""Dense univariate polynomials (coefficient lists, lowest degree first)."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from ..errors import NotFiniteOrder
from .intmatrix import IntMatrix


def trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def poly_sub(p: list, q: list) -> list:
    n = max(len(p), len(q))
    p = list(p) + [0] * (n - len(p))
    q = list(q) + [0] * (n - len(q))
    return trim([a - b for a, b in zip(p, q)])


def poly_divmod(p: list, q: list) -> tuple[list, list]:
    """Division with remainder over a field (or exact division by a monic ``q``)."""
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(p)
    lead = q[-1]
    monic = lead == 1
    quot = [0] * max(len(r) - len(q) + 1, 0)
    while len(r) >= len(q) and r:
        if monic:
            c = r[-1]
        elif isinstance(lead, int) and isinstance(r[-1], int):
            c = Fraction(r[-1], lead)
        else:
            c = r[-1] / lead
        shift = len(r) - len(q)
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] = r[shift + i] - c * b
        r = trim(r)
    return trim(quot), r


def poly_rem_monic(p: list, q: list) -> list:
    """Remainder of ``p`` modulo a monic integer polynomial ``q`` (fast path)."""
    r = list(p)
    dq = len(q) - 1
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k]
        if c:
            for i in range(dq):
                r[k - dq + i] -= c * q[i]
            r[k] = 0
    return r[:dq] if len(r) > dq else r + [0] * (dq - len(r))


def poly_xgcd(a: list, b: list) -> tuple[list, list, list]:
    """Return ``(g, s, t)`` with ``s a + t b = g`` over Q; ``g`` is monic."""
    r0, r1 = trim([Fraction(x) for x in a]), trim([Fraction(x) for x in b])
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    return [c / lead for c in r0], [c / lead for c in s0], [c / lead for c in t0]


def poly_eval(p: list, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_derivative(p: list) -> list:
    return trim([i * c for i, c in enumerate(p)][1:])


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def prime_power(n: int) -> tuple[int, int] | None:
    """``(p, r)`` with ``n == p**r`` and ``r >= 1``, else ``None``."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    r = 0
    while n % p == 0:
        n //= p
        r += 1
    return (p, r) if n == 1 else None


@lru_cache(maxsize=None)
def cyclotomic_poly(d: int) -> tuple[int, ...]:
    """Integer coefficients of Φ_d, lowest degree first."""
    p = [-1] + [0] * (d - 1) + [1]
    for e in divisors(d)[:-1]:
        p, r = poly_divmod(p, list(cyclotomic_poly(e)))
        assert not r
    return tuple(int(c) for c in p)


def charpoly(a, one=1):
    """Characteristic polynomial ``det(x I - a)`` by Faddeev-LeVerrier.

    Works over any field of characteristic zero; returns coefficients
    ``[c_0, ..., c_n]`` with ``c_n = 1``.
    """
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = one
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # mk <- a @ mk + c_{n-k+1} I
        prod_ = [[sum((a[i][l] * mk[l][j] for l in range(n)), 0) for j in range(n)] for i in range(n)]
        c = coeffs[n - k + 1]
        for i in range(n):
            prod_[i][i] = prod_[i][i] + c
        mk = prod_
        tr = sum((sum((a[i][l] * mk[l][i] for l in range(n)), 0) for i in range(n)), 0)
        coeffs[n - k] = -tr / k if not isinstance(tr, int) else Fraction(-tr, k)
    return coeffs


def char_poly_cyclotomic_factor(M: IntMatrix) -> dict[int, int]:
    """Multiplicities ``{d: e_d}`` with ``charpoly(M) == prod Φ_d^{e_d}``.

    Raises ``NotFiniteOrder`` when a non-cyclotomic factor remains.
    """
    if not M.is_square():
        raise ValueError("matrix must be square")
    n = M.rows
    p = [Fraction(c) for c in charpoly(M.tolist())]
    out: dict[int, int] = {}
    d = 1
    while len(p) > 1 and d <= 2 * n * n + 2:
        if euler_phi(d) <= n:
            phi = list(cyclotomic_poly(d))
            while len(p) >= len(phi):
                q, r = poly_divmod(p, phi)
                if r:
                    break
                p = q
                out[d] = out.get(d, 0) + 1
        d += 1
    if len(p) > 1:
        raise NotFiniteOrder(f"characteristic polynomial has a non-cyclotomic factor {p}")
    return out


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out
