"""The aggregate signature protocol: setup, registration, signing, aggregation
and batch verification.

Scalars are plain ``int`` values reduced into [1, q-1]; points are
:class:`~vdas.algebra.G1Point`.  Every randomized operation takes an explicit
``rng_seed`` so that runs are reproducible.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import (
    G1Point,
    GroupParams,
    encode_point,
    frame,
    hash_to_point,
    hash_to_scalar,
    pairing,
    paused,
    point_add,
    point_mul,
)
from .errors import EmptyBatchError, ShapeError, VdasError


@dataclass(frozen=True)
class SystemParams:
    group: GroupParams
    P0: G1Point
    data_space_note: str = "data in {0,1}*"


@dataclass(frozen=True)
class MasterKey:
    s: int


@dataclass(frozen=True)
class Identity:
    id_bytes: bytes

    def __post_init__(self):
        if not self.id_bytes:
            raise ValueError("identity must be non-empty")

    def encode(self) -> bytes:
        return frame(b"ID", self.id_bytes)


@dataclass(frozen=True)
class StateInfo:
    delta: bytes

    def __post_init__(self):
        if not self.delta:
            raise ValueError("state information must be non-empty")


@dataclass(frozen=True)
class RegistrationRecord:
    """What the KGC forwards to the data center: <ID, Q, Ppub>."""

    identity: Identity
    Q: G1Point
    Ppub: G1Point


@dataclass(frozen=True)
class TerminalKeys:
    identity: Identity
    Q: G1Point
    D: G1Point
    x: int
    Ppub: G1Point

    def record(self) -> RegistrationRecord:
        return RegistrationRecord(self.identity, self.Q, self.Ppub)


@dataclass(frozen=True)
class IndividualSignature:
    R: G1Point
    V: G1Point


@dataclass(frozen=True)
class AggregateSignature:
    R: G1Point
    V: G1Point
    n: int = field(default=0, compare=False)


def random_scalar(rng_seed: bytes, label: bytes, q: int) -> int:
    """Deterministic uniform draw from [1, q-1] keyed by (label, seed)."""
    rng = random.Random(int.from_bytes(hashlib.sha256(label + b"|" + rng_seed).digest(), "big"))
    return rng.randrange(1, q)


# -- hash inputs shared by signer and verifier -------------------------------

def state_point(sys: SystemParams, delta: StateInfo) -> G1Point:
    """U = H1(delta || P0)."""
    return hash_to_point(frame(delta.delta, encode_point(sys.P0, sys.group)), sys.group)


def identity_point(identity: Identity, group: GroupParams) -> G1Point:
    return hash_to_point(identity.encode(), group)


def _h(data: bytes, delta: StateInfo, identity: Identity, group: GroupParams) -> int:
    return hash_to_scalar(frame(data, delta.delta, identity.id_bytes), group)


def _g(data: bytes, delta: StateInfo, Ppub: G1Point, group: GroupParams) -> int:
    return hash_to_scalar(frame(data, delta.delta, encode_point(Ppub, group)), group)


# -- the four stages ------------------------------------------------------------

def setup(group: GroupParams, rng_seed: bytes, *, s: Optional[int] = None):
    """KGC setup; returns ``(SystemParams, MasterKey)``.  ``s`` overrides the draw."""
    if s is None:
        s = random_scalar(rng_seed, b"master-key", group.q)
    if not 1 <= s < group.q:
        raise ValueError("master key must lie in [1, q-1]")
    return SystemParams(group=group, P0=point_mul(s, group.P)), MasterKey(s)


def extract_partial_key(msk: MasterKey, identity: Identity, sys: SystemParams):
    """Returns ``(Q, D)`` with Q = H1(ID) and D = s*Q."""
    Q = identity_point(identity, sys.group)
    return Q, point_mul(msk.s, Q)


def user_keygen(sys: SystemParams, rng_seed: bytes, *, x: Optional[int] = None):
    """Terminal secret value and public key ``(x, x*P)``."""
    if x is None:
        x = random_scalar(rng_seed, b"secret-value", sys.group.q)
    if not 1 <= x < sys.group.q:
        raise ValueError("secret value must lie in [1, q-1]")
    return x, point_mul(x, sys.group.P)


def register(sys: SystemParams, msk: MasterKey, identity: Identity, rng_seed: bytes) -> TerminalKeys:
    Q, D = extract_partial_key(msk, identity, sys)
    x, Ppub = user_keygen(sys, rng_seed)
    return TerminalKeys(identity, Q, D, x, Ppub)


def partial_key_valid(sys: SystemParams, Q: G1Point, D: G1Point) -> bool:
    """Public check e(D, P) == e(Q, P0)."""
    g = sys.group
    return pairing(D, g.P, g) == pairing(Q, sys.P0, g)


def validate_record(sys: SystemParams, rec: RegistrationRecord) -> bool:
    """Registration-time check that Q = H1(ID) and both points are in G1."""
    g = sys.group
    with paused():
        return (
            g.in_subgroup(rec.Ppub)
            and not rec.Ppub.is_identity
            and rec.Q == identity_point(rec.identity, g)
        )


def sign(
    sys: SystemParams,
    keys: TerminalKeys,
    delta: StateInfo,
    data: bytes,
    rng_seed: bytes,
) -> IndividualSignature:
    g = sys.group
    r = random_scalar(rng_seed, b"sign-nonce", g.q)
    R = point_mul(r, g.P)
    h = _h(data, delta, keys.identity, g)
    gs = _g(data, delta, keys.Ppub, g)
    U = state_point(sys, delta)
    V = point_add(point_mul(gs, keys.D), point_mul((keys.x * h + r) % g.q, U))
    return IndividualSignature(R, V)


def aggregate(sigs: Sequence[IndividualSignature]) -> AggregateSignature:
    if not sigs:
        raise EmptyBatchError("cannot aggregate an empty batch")
    R, V = sigs[0].R, sigs[0].V
    for s in sigs[1:]:
        R = point_add(R, s.R)
        V = point_add(V, s.V)
    return AggregateSignature(R, V, len(sigs))


def aggregate_verify(
    sys: SystemParams,
    records: Sequence[RegistrationRecord],
    delta: StateInfo,
    data_list: Sequence[bytes],
    agg: AggregateSignature,
    *,
    faithful: bool = False,
) -> bool:
    """Check e(V, P) == e(sum g_i Q_i, P0) * e(sum h_i P_i + R, U).

    With ``faithful=True`` every Q_i is recomputed as H1(ID_i) instead of
    taken from the cached record, which reproduces the (n+1) map-to-point
    hashes charged by the published cost table.
    """
    if len(records) != len(data_list):
        raise ShapeError(f"{len(records)} records but {len(data_list)} data items")
    if not records:
        raise EmptyBatchError("cannot verify an empty batch")
    g = sys.group
    with paused():
        if not (g.in_subgroup(agg.R) and g.in_subgroup(agg.V)):
            return False

    U = state_point(sys, delta)
    sum_gQ = g.identity
    sum_hP = g.identity
    for rec, data in zip(records, data_list):
        Q = identity_point(rec.identity, g) if faithful else rec.Q
        h = _h(data, delta, rec.identity, g)
        gs = _g(data, delta, rec.Ppub, g)
        sum_gQ = point_add(sum_gQ, point_mul(gs, Q))
        sum_hP = point_add(sum_hP, point_mul(h, rec.Ppub))
    lhs = pairing(agg.V, g.P, g)
    rhs = pairing(sum_gQ, sys.P0, g) * pairing(point_add(sum_hP, agg.R), U, g)
    return lhs == rhs


def verify_individual(
    sys: SystemParams,
    rec: RegistrationRecord,
    delta: StateInfo,
    data: bytes,
    sig: IndividualSignature,
    *,
    faithful: bool = False,
) -> bool:
    """Single-signature check; the n = 1 case of :func:`aggregate_verify`.

    Never raises on malformed input: anything that is not a valid signature
    is simply rejected.
    """
    try:
        agg = AggregateSignature(sig.R, sig.V, 1)
        return aggregate_verify(sys, [rec], delta, [data], agg, faithful=faithful)
    except (VdasError, ValueError, ZeroDivisionError, AttributeError, TypeError):
        return False
