"""The supersingular curve y^2 = x^3 + x over F_p and its order-q subgroup.

For p = 3 (mod 4) this curve has exactly p + 1 rational points, so choosing
p = h*q - 1 with q prime gives a cyclic order-q subgroup with embedding
degree 2.  All arithmetic here is variable-time.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Optional, Union

import gmpy2
from gmpy2 import mpz

from ..errors import SearchExhausted
from . import counter
from .field import Fp2


@dataclass(frozen=True)
class G1Point:
    """Affine point on E(F_p); ``x is None`` encodes the point at infinity.

    ``a + b`` and ``k * a`` go through :func:`point_add` / :func:`point_mul`
    and are therefore counted when a recording session is active.
    """

    x: Optional[int]
    y: Optional[int]
    p: int

    @classmethod
    def identity(cls, p: int) -> "G1Point":
        return cls(None, None, p)

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def on_curve(self) -> bool:
        if self.x is None:
            return True
        p = self.p
        if not (0 <= self.x < p and 0 <= self.y < p):
            return False
        return (self.y * self.y - self.x * (self.x * self.x + 1)) % p == 0

    def __neg__(self) -> "G1Point":
        if self.x is None:
            return self
        return G1Point(self.x, -self.y % self.p, self.p)

    def __add__(self, other: "G1Point") -> "G1Point":
        return point_add(self, other)

    def __sub__(self, other: "G1Point") -> "G1Point":
        return point_add(self, -other)

    def __rmul__(self, k: int) -> "G1Point":
        return point_mul(k, self)

    def __repr__(self) -> str:
        if self.x is None:
            return "G1Point(identity)"
        return f"G1Point({self.x:#x}, {self.y:#x})"


@dataclass(frozen=True)
class GroupParams:
    p: int
    q: int
    h: int
    P: G1Point
    security_label: str = "custom"

    @property
    def field_bytes(self) -> int:
        return (self.p.bit_length() + 7) // 8

    @property
    def scalar_bytes(self) -> int:
        return (self.q.bit_length() + 7) // 8

    @property
    def identity(self) -> G1Point:
        return G1Point.identity(self.p)

    def point(self, x: int, y: int) -> G1Point:
        return G1Point(x, y, self.p)

    def in_subgroup(self, pt: G1Point) -> bool:
        return pt.p == self.p and pt.on_curve() and mul_raw(self.q, pt).is_identity

    def validate(self) -> None:
        """Raise ``ValueError`` if any structural invariant fails."""
        p, q = self.p, self.q
        if not gmpy2.is_prime(p, 50) or p % 4 != 3:
            raise ValueError("p must be a prime congruent to 3 mod 4")
        if not gmpy2.is_prime(q, 50):
            raise ValueError("q must be prime")
        if p + 1 != self.h * q:
            raise ValueError("p + 1 must equal h * q")
        if self.P.is_identity or not self.P.on_curve() or self.P.p != p:
            raise ValueError("generator must be a non-identity curve point")
        if not mul_raw(q, self.P).is_identity:
            raise ValueError("generator does not have order q")


# -- raw group law (uncounted) ----------------------------------------------

def add_raw(a: G1Point, b: G1Point) -> G1Point:
    if a.x is None:
        return b
    if b.x is None:
        return a
    p = a.p
    if a.x == b.x:
        if (a.y + b.y) % p == 0:
            return G1Point.identity(p)
        lam = (3 * a.x * a.x + 1) * int(gmpy2.invert(2 * a.y, p)) % p
    else:
        lam = (b.y - a.y) * int(gmpy2.invert(b.x - a.x, p)) % p
    x3 = (lam * lam - a.x - b.x) % p
    y3 = (lam * (a.x - x3) - a.y) % p
    return G1Point(x3, y3, p)


def _jac_double(X, Y, Z, p):
    if Z == 0 or Y == 0:
        return 1, 1, 0
    YY = Y * Y % p
    S = 4 * X * YY % p
    ZZ = Z * Z % p
    M = (3 * X * X + ZZ * ZZ) % p  # curve coefficient a = 1
    X3 = (M * M - 2 * S) % p
    Y3 = (M * (S - X3) - 8 * YY * YY) % p
    Z3 = 2 * Y * Z % p
    return X3, Y3, Z3


def _jac_add_affine(X, Y, Z, x2, y2, p):
    if Z == 0:
        return x2, y2, 1
    ZZ = Z * Z % p
    U2 = x2 * ZZ % p
    S2 = y2 * ZZ * Z % p
    H = (U2 - X) % p
    R = (S2 - Y) % p
    if H == 0:
        if R == 0:
            return _jac_double(X, Y, Z, p)
        return 1, 1, 0
    HH = H * H % p
    HHH = H * HH % p
    V = X * HH % p
    X3 = (R * R - HHH - 2 * V) % p
    Y3 = (R * (V - X3) - Y * HHH) % p
    Z3 = Z * H % p
    return X3, Y3, Z3


WINDOW = 4
_fixed_tables: dict = {}


def _to_affine(X, Y, Z, p: int) -> G1Point:
    if Z == 0:
        return G1Point.identity(p)
    zi = gmpy2.invert(Z, p)
    zi2 = zi * zi % p
    return G1Point(int(X * zi2 % p), int(Y * zi2 * zi % p), p)


def _odd_multiples(a: G1Point, count: int) -> list:
    """[a, 3a, 5a, ...] as mpz affine pairs."""
    two = add_raw(a, a)
    out = [a]
    for _ in range(count - 1):
        out.append(add_raw(out[-1], two))
    return [(mpz(t.x), mpz(t.y)) if t.x is not None else None for t in out]


def precompute_fixed_base(a: G1Point, max_bits: int) -> None:
    """Build a 4-bit comb table so that k*a (k < 2^max_bits) needs only
    ~max_bits/4 mixed additions and no doublings."""
    if a.x is None or a in _fixed_tables:
        return
    table = []
    base = a
    for _ in range((max_bits + WINDOW - 1) // WINDOW):
        row = [None, base]
        for _ in range(2, 1 << WINDOW):
            row.append(add_raw(row[-1], base))
        table.append([(mpz(t.x), mpz(t.y)) if t is not None and t.x is not None else None for t in row])
        for _ in range(WINDOW):
            base = add_raw(base, base)
    _fixed_tables[a] = (max_bits, table)


def _mul_fixed(k: int, a: G1Point, table) -> G1Point:
    p = mpz(a.p)
    X, Y, Z = mpz(1), mpz(1), mpz(0)
    mask = (1 << WINDOW) - 1
    j = 0
    while k:
        d = k & mask
        if d:
            entry = table[j][d]
            if entry is not None:
                X, Y, Z = _jac_add_affine(X, Y, Z, entry[0], entry[1], p)
        k >>= WINDOW
        j += 1
    return _to_affine(X, Y, Z, a.p)


def mul_raw(k: int, a: G1Point) -> G1Point:
    """k*a in Jacobian coordinates, uncounted; any integer ``k``.

    Uses a fixed-base table when one was registered for ``a``, otherwise a
    left-to-right sliding window over odd multiples.
    """
    if k < 0:
        return mul_raw(-k, -a)
    if k == 0 or a.x is None:
        return G1Point.identity(a.p)
    fixed = _fixed_tables.get(a)
    if fixed is not None and k.bit_length() <= fixed[0]:
        return _mul_fixed(k, a, fixed[1])
    if k.bit_length() <= 8:
        return _mul_plain(k, a)
    p = mpz(a.p)
    odd = _odd_multiples(a, 1 << (WINDOW - 1))
    X, Y, Z = mpz(1), mpz(1), mpz(0)
    bits = bin(k)[2:]
    i, n = 0, len(bits)
    while i < n:
        if bits[i] == "0":
            X, Y, Z = _jac_double(X, Y, Z, p)
            i += 1
            continue
        j = min(i + WINDOW, n)
        while bits[j - 1] == "0":
            j -= 1
        for _ in range(j - i):
            X, Y, Z = _jac_double(X, Y, Z, p)
        entry = odd[int(bits[i:j], 2) >> 1]
        if entry is not None:
            X, Y, Z = _jac_add_affine(X, Y, Z, entry[0], entry[1], p)
        i = j
    return _to_affine(X, Y, Z, a.p)


def _mul_plain(k: int, a: G1Point) -> G1Point:
    p = mpz(a.p)
    ax, ay = mpz(a.x), mpz(a.y)
    X, Y, Z = mpz(1), mpz(1), mpz(0)
    for bit in bin(k)[2:]:
        X, Y, Z = _jac_double(X, Y, Z, p)
        if bit == "1":
            X, Y, Z = _jac_add_affine(X, Y, Z, ax, ay, p)
    return _to_affine(X, Y, Z, a.p)


# -- public, instrumented operations -----------------------------------------

def point_add(a: G1Point, b: G1Point) -> G1Point:
    counter.tick("point_adds")
    return add_raw(a, b)


def point_mul(k: int, a: G1Point) -> G1Point:
    counter.tick("scalar_mults")
    return mul_raw(k, a)


def distortion_map(a: G1Point) -> Optional[tuple[Fp2, Fp2]]:
    """phi(x, y) = (-x, i*y), a point of E(F_p^2) outside E(F_p).

    Returns ``None`` for the identity.  Coordinates are F_p^2 tuples.
    """
    if a.x is None:
        return None
    p = a.p
    return ((-a.x % p, 0), (0, a.y))


def sqrt_mod(n: int, p: int) -> Optional[int]:
    """Square root modulo p = 3 (mod 4), or ``None`` for a non-residue."""
    y = int(gmpy2.powmod(n, (p + 1) // 4, p))
    return y if y * y % p == n % p else None


# -- parameter generation -----------------------------------------------------

def _seeded_rng(seed: bytes, label: bytes) -> random.Random:
    return random.Random(int.from_bytes(hashlib.sha256(label + seed).digest(), "big"))


def _random_prime(rng: random.Random, bits: int) -> int:
    while True:
        c = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if gmpy2.is_prime(c, 50):
            return c


def gen_group_params(
    q_bits: int,
    p_bits: int,
    seed: Union[bytes, str],
    label: str = "custom",
    max_candidates: int = 200_000,
) -> GroupParams:
    """Search deterministic curve parameters for the given sizes.

    A random q_bits prime q is fixed first; cofactors h (multiples of 4, so
    that p = h*q - 1 is 3 mod 4) are then scanned from a random start until p
    is a p_bits prime.  The generator is a random curve point times h.
    """
    if q_bits < 16:
        raise ValueError("q_bits must be at least 16")
    if p_bits <= q_bits:
        raise ValueError("p_bits must exceed q_bits")
    if isinstance(seed, str):
        seed = seed.encode()
    rng = _seeded_rng(seed, b"vdas-params")
    q = _random_prime(rng, q_bits)

    h_lo = ((1 << (p_bits - 1)) + 1 + q - 1) // q
    h_hi = (1 << p_bits) // q
    if h_hi < h_lo:
        raise SearchExhausted("no cofactor range for these sizes")
    h = rng.randint(h_lo, h_hi)
    h += -h % 4
    p = 0
    for _ in range(max_candidates):
        if h > h_hi:
            h = h_lo + (-h_lo % 4)
        cand = h * q - 1
        if h % q != 0 and cand.bit_length() == p_bits and gmpy2.is_prime(cand, 50):
            p = cand
            break
        h += 4
    if not p:
        raise SearchExhausted(f"no prime p found in {max_candidates} candidates")

    while True:
        x = rng.randrange(p)
        y = sqrt_mod(x * (x * x + 1), p)
        if y is None:
            continue
        P = mul_raw(h, G1Point(x, y, p))
        if not P.is_identity:
            break
    params = GroupParams(p=p, q=q, h=h, P=P, security_label=label)
    params.validate()
    return params
