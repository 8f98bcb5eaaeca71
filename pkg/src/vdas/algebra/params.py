"""Shipped parameter sets.

Both were produced by :func:`gen_group_params` from the seeds noted below and
are frozen here so that loading them costs nothing.
"""
from __future__ import annotations

from functools import lru_cache

from .curve import G1Point, GroupParams, precompute_fixed_base

# gen_group_params(16, 64, b"vdas-toy-64", "toy-64")
_TOY_64 = dict(
    p=0xB65241F29217051B,
    q=0xA5FB,
    h=0x119340C483094,
    x=0x2EBC6A3054FD3BA1,
    y=0x8E04E5E21DCC2711,
)

# gen_group_params(160, 512, b"vdas-ss-512", "ss-512")
_SS_512 = dict(
    p=int(
        "c687b093f49aec3dd2e7e2a990e5de76ba038c9f8e06c43ad32ef04cc0f800d8"
        "81cef9a607658afc0765cbf386f33a73106f1f47db25b3f3ee896070bdf330cf",
        16,
    ),
    q=0x812CD781C691CE4F79096992C8BB3CA99AADE2A9,
    h=int(
        "18972a60551f7f374dc49160c8dde70d5ff0433505663595aa07d8b16d14e73d"
        "9a34e3e62354f4e89e54efc50",
        16,
    ),
    x=int(
        "78b32721aadcf9ec44a1e9ab7a5326884861ff96d7fb39c6f9112e0e6b3068f1"
        "374e9335fbab02890b703842816c55a102dcd59e332a4f295a477d1c3804e286",
        16,
    ),
    y=int(
        "a09b8c9401f80b4c9a6022e4dc78191509a50beadbeb8488e41a0e0f6a3ed00b"
        "857276382fff97d7ad6570fc82397a9dfbd85a632a0709456fed3e79f537db",
        16,
    ),
)

_RAW = {"toy-64": _TOY_64, "ss-512": _SS_512}
PARAMSETS = tuple(_RAW)


@lru_cache(maxsize=None)
def get_params(name: str) -> GroupParams:
    try:
        raw = _RAW[name]
    except KeyError:
        raise KeyError(f"unknown paramset {name!r}; choose from {', '.join(PARAMSETS)}") from None
    p = raw["p"]
    params = GroupParams(p=p, q=raw["q"], h=raw["h"], P=G1Point(raw["x"], raw["y"], p), security_label=name)
    params.validate()
    precompute_fixed_base(params.P, params.q.bit_length())
    return params
