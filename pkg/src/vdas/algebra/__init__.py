"""Type-1 pairing arithmetic over the supersingular curve y^2 = x^3 + x."""
from .counter import OpCounter, paused, recording
from .curve import G1Point, GroupParams, distortion_map, gen_group_params, point_add, point_mul
from .encoding import (
    decode_point,
    decode_scalar,
    encode_point,
    encode_scalar,
    params_from_text,
    params_to_text,
    point_len,
)
from .field import GtElement
from .hashing import frame, hash_to_point, hash_to_scalar
from .pairing import pairing
from .params import PARAMSETS, get_params

__all__ = [
    "G1Point",
    "GroupParams",
    "GtElement",
    "OpCounter",
    "PARAMSETS",
    "decode_point",
    "decode_scalar",
    "distortion_map",
    "encode_point",
    "encode_scalar",
    "frame",
    "gen_group_params",
    "get_params",
    "hash_to_point",
    "hash_to_scalar",
    "pairing",
    "params_from_text",
    "params_to_text",
    "paused",
    "point_add",
    "point_len",
    "point_mul",
    "recording",
]
