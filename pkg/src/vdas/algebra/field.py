"""Arithmetic in F_p^2 = F_p[i]/(i^2 + 1), valid for p = 3 (mod 4).

Elements are plain ``(a, b)`` tuples meaning ``a + b*i``; the hot loops in the
pairing work on those directly.  :class:`GtElement` wraps a tuple for the
public pairing output.
"""
from __future__ import annotations

from dataclasses import dataclass

import gmpy2

Fp2 = tuple  # (a, b) -> a + b*i

def fp2_mul(x: Fp2, y: Fp2, p: int) -> Fp2:
    a, b = x
    c, d = y
    ac = a * c
    bd = b * d
    return ((ac - bd) % p, ((a + b) * (c + d) - ac - bd) % p)

def fp2_sqr(x: Fp2, p: int) -> Fp2:
    a, b = x
    return ((a + b) * (a - b) % p, 2 * a * b % p)

def fp2_conj(x: Fp2, p: int) -> Fp2:
    return (x[0], -x[1] % p)

def fp2_inv(x: Fp2, p: int) -> Fp2:
    a, b = x
    norm = (a * a + b * b) % p
    if norm == 0:
        raise ZeroDivisionError("inverse of zero in F_p^2")
    t = gmpy2.invert(norm, p)
    return (a * t % p, -b * t % p)

def fp2_pow(x: Fp2, e: int, p: int) -> Fp2:
    if e < 0:
        return fp2_pow(fp2_inv(x, p), -e, p)
    result = (1, 0)
    base = x
    for bit in bin(e)[2:]:
        result = fp2_sqr(result, p)
        if bit == "1":
            result = fp2_mul(result, base, p)
    return result

@dataclass(frozen=True)
class GtElement:
    """An element of the order-q subgroup of F_p^2* (the pairing target)."""

    a: int
    b: int
    p: int

    @classmethod
    def one(cls, p: int) -> "GtElement":
        return cls(1, 0, p)

    def _t(self) -> Fp2:
        return (self.a, self.b)

    def __mul__(self, other: "GtElement") -> "GtElement":
        c = fp2_mul(self._t(), other._t(), self.p)
        return GtElement(c[0], c[1], self.p)

    def __pow__(self, e: int) -> "GtElement":
        c = fp2_pow((gmpy2.mpz(self.a), gmpy2.mpz(self.b)), e, gmpy2.mpz(self.p))
        return GtElement(int(c[0]), int(c[1]), self.p)

    def inverse(self) -> "GtElement":
        c = fp2_inv(self._t(), self.p)
        return GtElement(c[0], c[1], self.p)

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0

    def __repr__(self) -> str:
        return f"GtElement({self.a:#x} + {self.b:#x}*i)"
