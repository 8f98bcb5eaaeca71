"""Symmetric (type-1) reduced Tate pairing on y^2 = x^3 + x.

e(A, B) = f_{q,A}(phi(B)) ^ ((p^2 - 1) / q), where phi is the distortion
map.  The Miller loop keeps vertical-line denominators; they live in F_p and
are inverted once at the end.
"""
from __future__ import annotations

import gmpy2
from gmpy2 import mpz

from . import counter
from .curve import G1Point, GroupParams
from .field import GtElement, fp2_conj, fp2_inv, fp2_mul, fp2_pow, fp2_sqr


def miller_loop(a: G1Point, b: G1Point, q: int) -> tuple[int, int]:
    """f_{q,a} evaluated at phi(b), before final exponentiation."""
    p = mpz(a.p)
    xq = -mpz(b.x) % p  # phi(b) = (-x_b, i*y_b)
    yq = mpz(b.y)
    xp, yp = mpz(a.x), mpz(a.y)
    xt, yt = xp, yp
    num = (mpz(1), mpz(0))
    den = mpz(1)
    for bit in bin(q)[3:]:
        # doubling step: tangent at T, vertical at 2T
        lam = (3 * xt * xt + 1) * gmpy2.invert(2 * yt, p) % p
        x2 = (lam * lam - 2 * xt) % p
        y2 = (lam * (xt - x2) - yt) % p
        line = ((yt - lam * (xt - xq)) * -1 % p, yq)
        num = fp2_mul(fp2_sqr(num, p), line, p)
        den = den * den * (xq - x2) % p
        xt, yt = x2, y2
        if bit == "1":
            if xt == xp:
                # T = -P: vertical line, sum is the identity
                num = fp2_mul(num, ((xq - xt) % p, 0), p)
                xt = yt = None
                continue
            lam = (yp - yt) * gmpy2.invert(xp - xt, p) % p
            x3 = (lam * lam - xt - xp) % p
            y3 = (lam * (xt - x3) - yt) % p
            line = ((lam * (xq - xt) + yt) * -1 % p, yq)
            num = fp2_mul(num, line, p)
            den = den * (xq - x3) % p
            xt, yt = x3, y3
    dinv = gmpy2.invert(den, p)
    return (num[0] * dinv % p, num[1] * dinv % p)


def final_exponentiation(f: tuple[int, int], p: int, q: int) -> tuple[int, int]:
    # f^(p-1) via Frobenius (conjugation), then the remaining (p+1)/q
    g = fp2_mul(fp2_conj(f, p), fp2_inv(f, p), p)
    return fp2_pow(g, (p + 1) // q, p)


def pairing(a: G1Point, b: G1Point, params: GroupParams) -> GtElement:
    counter.tick("pairings")
    p, q = params.p, params.q
    if a.is_identity or b.is_identity:
        return GtElement.one(p)
    f = miller_loop(a, b, q)
    c = final_exponentiation(f, mpz(p), q)
    return GtElement(int(c[0]), int(c[1]), p)
