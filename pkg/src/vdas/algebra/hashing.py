"""Hash functions onto G1 and onto Z_q^*.

Both are SHA-256 based with a one-byte domain tag and 4-byte big-endian
length prefixes, so no two distinct inputs share a preimage encoding.
"""
from __future__ import annotations

import hashlib

from ..errors import HashToPointError
from . import counter
from .curve import G1Point, GroupParams, mul_raw, sqrt_mod

TAG_POINT = b"\x01"
TAG_SCALAR = b"\x02"
MAX_TRIES = 1000


def frame(*fields: bytes) -> bytes:
    """Concatenate fields, each prefixed with its 4-byte big-endian length."""
    return b"".join(len(f).to_bytes(4, "big") + f for f in fields)


def _map_to_point(message: bytes, params: GroupParams) -> G1Point:
    p = params.p
    prefix = TAG_POINT + frame(message)
    for c in range(MAX_TRIES):
        digest = hashlib.sha256(prefix + c.to_bytes(4, "big")).digest()
        x = int.from_bytes(digest, "big") % p
        y = sqrt_mod(x * (x * x + 1), p)
        if y is None:
            continue
        if (y & 1) != (digest[0] >> 7):
            y = -y % p
        pt = mul_raw(params.h, G1Point(x, y, p))
        if not pt.is_identity:
            return pt
    raise HashToPointError("hash_to_point exceeded its iteration cap")


def hash_to_point(message: bytes, params: GroupParams) -> G1Point:
    counter.tick("map_hashes")
    return _map_to_point(message, params)


def hash_to_scalar(message: bytes, params: GroupParams) -> int:
    counter.tick("scalar_hashes")
    digest = hashlib.sha256(TAG_SCALAR + frame(message)).digest()
    return int.from_bytes(digest, "big") % (params.q - 1) + 1
