"""Byte encodings for points, scalars and parameter sets.

Points: tag 0x00 (identity) or 0x04 (uncompressed), then x and y big-endian,
each padded to the field byte length; the identity carries zero coordinates
so every encoding of a parameter set has the same length.
"""
from __future__ import annotations

from ..errors import BadTagError, LengthError, OffCurveError, WrongOrderError
from .curve import G1Point, GroupParams, mul_raw

TAG_IDENTITY = 0x00
TAG_UNCOMPRESSED = 0x04


def point_len(params: GroupParams) -> int:
    return 1 + 2 * params.field_bytes


def encode_point(pt: G1Point, params: GroupParams) -> bytes:
    n = params.field_bytes
    if pt.is_identity:
        return bytes([TAG_IDENTITY]) + bytes(2 * n)
    return bytes([TAG_UNCOMPRESSED]) + pt.x.to_bytes(n, "big") + pt.y.to_bytes(n, "big")


def decode_point(data: bytes, params: GroupParams, check_order: bool = True) -> G1Point:
    """Inverse of :func:`encode_point`, validating curve and subgroup membership."""
    n = params.field_bytes
    if len(data) != 1 + 2 * n:
        raise LengthError(f"point encoding must be {1 + 2 * n} bytes, got {len(data)}")
    tag = data[0]
    if tag == TAG_IDENTITY:
        if any(data[1:]):
            raise BadTagError("identity encoding with non-zero coordinates")
        return params.identity
    if tag != TAG_UNCOMPRESSED:
        raise BadTagError(f"unknown point tag {tag:#04x}")
    x = int.from_bytes(data[1 : 1 + n], "big")
    y = int.from_bytes(data[1 + n :], "big")
    pt = G1Point(x, y, params.p)
    if not pt.on_curve():
        raise OffCurveError("point is not on the curve")
    if check_order and not mul_raw(params.q, pt).is_identity:
        raise WrongOrderError("point is not in the order-q subgroup")
    return pt


def encode_scalar(k: int, params: GroupParams) -> bytes:
    return (k % params.q).to_bytes(params.scalar_bytes, "big")


def decode_scalar(data: bytes, params: GroupParams) -> int:
    if len(data) != params.scalar_bytes:
        raise LengthError(f"scalar encoding must be {params.scalar_bytes} bytes")
    k = int.from_bytes(data, "big")
    if k >= params.q:
        raise LengthError("scalar is not reduced modulo q")
    return k


def params_to_text(params: GroupParams) -> str:
    lines = [
        f"security_label: {params.security_label}",
        f"p: {params.p:x}",
        f"q: {params.q:x}",
        f"h: {params.h:x}",
        f"P: {encode_point(params.P, params).hex()}",
    ]
    return "\n".join(lines) + "\n"


def params_from_text(text: str) -> GroupParams:
    fields = parse_kv(text)
    try:
        p, q, h = (int(fields[k], 16) for k in ("p", "q", "h"))
        label = fields["security_label"]
        raw = bytes.fromhex(fields["P"])
    except (KeyError, ValueError) as exc:
        raise LengthError(f"malformed parameter text: {exc}") from None
    shell = GroupParams(p=p, q=q, h=h, P=G1Point.identity(p), security_label=label)
    params = GroupParams(p=p, q=q, h=h, P=decode_point(raw, shell), security_label=label)
    params.validate()
    return params


def parse_kv(text: str) -> dict[str, str]:
    """Parse ``key: value`` lines; blank lines and ``#`` comments are skipped."""
    out: dict[str, str] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise LengthError(f"expected 'key: value', got {line!r}")
        out[key.strip()] = value.strip()
    return out
