"""Exact arithmetic in cyclotomic fields Q(ζ_m).

Each element carries its conductor ``m`` and its coordinates in the power basis
``1, ζ, ..., ζ^{φ(m)-1}``. Binary operations first embed both operands into
Q(ζ_lcm).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from ..errors import DivisionByZero
from .polys import cyclotomic_poly, euler_phi, lcm, poly_eval, poly_rem_monic, poly_xgcd


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def _ramanujan_sum(m: int, i: int) -> int:
    # trace of ζ_m^i down to Q
    q = m // gcd(m, i)
    return _mobius(q) * euler_phi(m) // euler_phi(q)


class CycloElem:
    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Iterable):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        c = [Fraction(x) for x in coeffs]
        deg = euler_phi(conductor)
        if len(c) > deg:
            c = poly_rem_monic(c, list(cyclotomic_poly(conductor)))
        c = c + [Fraction(0)] * (deg - len(c))
        self.conductor = conductor
        self.coeffs = tuple(c)

    # constructors -------------------------------------------------
    @classmethod
    def zeta(cls, m: int, k: int = 1) -> CycloElem:
        k %= m
        return cls(m, [0] * k + [1])

    @classmethod
    def rational(cls, m: int, q) -> CycloElem:
        return cls(m, [q])

    @classmethod
    def coerce(cls, x, m: int) -> CycloElem:
        if isinstance(x, CycloElem):
            return x.embed_into(lcm(x.conductor, m)) if m % x.conductor else x.embed_into(m)
        return cls(m, [x])

    # structure ----------------------------------------------------
    def embed_into(self, m2: int) -> CycloElem:
        m = self.conductor
        if m2 % m:
            raise ValueError(f"Q(ζ_{m}) does not embed in Q(ζ_{m2})")
        if m2 == m:
            return self
        k = m2 // m
        poly = [Fraction(0)] * (k * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            poly[i * k] = c
        return CycloElem(m2, poly)

    def _align(self, other):
        if isinstance(other, CycloElem):
            if other.conductor == self.conductor:
                return self, other
            m = lcm(self.conductor, other.conductor)
            return self.embed_into(m), other.embed_into(m)
        if isinstance(other, (int, Fraction)):
            return self, CycloElem(self.conductor, [other])
        return None, None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def trace(self) -> Fraction:
        """Trace from Q(ζ_m) down to Q."""
        m = self.conductor
        return sum((c * _ramanujan_sum(m, i) for i, c in enumerate(self.coeffs) if c), Fraction(0))

    # arithmetic ---------------------------------------------------
    def __add__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return CycloElem(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.conductor, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return CycloElem(a.conductor, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.conductor, [x * other for x in self.coeffs])
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        n = len(a.coeffs)
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CycloElem(a.conductor, prod)

    __rmul__ = __mul__

    def inverse(self) -> CycloElem:
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycloElem(self.conductor, [1 / self.coeffs[0]])
        g, s, _ = poly_xgcd(list(self.coeffs), list(cyclotomic_poly(self.conductor)))
        assert g == [1]
        return CycloElem(self.conductor, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return CycloElem(self.conductor, [x / other for x in self.coeffs])
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> CycloElem:
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloElem(self.conductor, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> CycloElem:
        """Complex conjugation ζ ↦ ζ^{m-1}."""
        m = self.conductor
        poly = [Fraction(0)] * m
        for i, c in enumerate(self.coeffs):
            poly[(-i) % m] += c
        return CycloElem(m, poly)

    def is_root_of(self, poly: Sequence) -> bool:
        """Whether ``poly`` (coefficients lowest degree first) vanishes at ``self``."""
        value = poly_eval(list(poly), self)
        return value == 0

    def multiplicative_order(self) -> int | None:
        """Order as a root of unity, or ``None`` when it is not one."""
        bound = lcm(2, self.conductor)
        one = CycloElem(self.conductor, [1])
        power = one
        for k in range(1, bound + 1):
            power = power * self
            if power == one:
                return k
        return None

    # comparison ---------------------------------------------------
    def __eq__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        # normalised trace does not depend on the ambient conductor
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.trace() / euler_phi(self.conductor))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mon = "" if i == 0 else (f"z{self.conductor}" if i == 1 else f"z{self.conductor}^{i}")
                terms.append(f"{c}" if not mon else (mon if c == 1 else f"{c}*{mon}"))
        return " + ".join(terms) if terms else "0"
