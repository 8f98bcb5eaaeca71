"""Binary signature encodings and text key-file envelopes.

Signatures: one tag byte (``S`` individual, ``A`` aggregate) followed by
encode(R) || encode(V).  Key material and records are ``key: value`` text
with lowercase hex payloads and a ``paramset:`` header.
"""
from __future__ import annotations

from typing import Union

from .algebra import (
    GroupParams,
    decode_point,
    decode_scalar,
    encode_point,
    encode_scalar,
    get_params,
    point_len,
)
from .algebra.encoding import parse_kv
from .core import (
    AggregateSignature,
    Identity,
    IndividualSignature,
    MasterKey,
    RegistrationRecord,
    StateInfo,
    SystemParams,
    TerminalKeys,
)
from .errors import BadTagError, DecodeError, IdentityPointError, LengthError, ParamsetMismatch

TAG_INDIVIDUAL = 0x53
TAG_AGGREGATE = 0x41

Signature = Union[IndividualSignature, AggregateSignature]


def signature_len(params: GroupParams) -> int:
    return 1 + 2 * point_len(params)


def encode_signature(sig: Signature, params: GroupParams) -> bytes:
    tag = TAG_AGGREGATE if isinstance(sig, AggregateSignature) else TAG_INDIVIDUAL
    return bytes([tag]) + encode_point(sig.R, params) + encode_point(sig.V, params)


def decode_signature(data: bytes, params: GroupParams) -> Signature:
    if len(data) != signature_len(params):
        raise LengthError(f"signature must be {signature_len(params)} bytes, got {len(data)}")
    tag = data[0]
    if tag not in (TAG_INDIVIDUAL, TAG_AGGREGATE):
        raise BadTagError(f"unknown signature tag {tag:#04x}")
    n = point_len(params)
    R = decode_point(data[1 : 1 + n], params)
    V = decode_point(data[1 + n :], params)
    if R.is_identity or V.is_identity:
        raise IdentityPointError("signature components must not be the identity")
    if tag == TAG_AGGREGATE:
        return AggregateSignature(R, V)
    return IndividualSignature(R, V)


# -- text envelopes ------------------------------------------------------------

def _envelope(kind: str, params: GroupParams, **fields: str) -> str:
    lines = [f"paramset: {params.security_label}", f"kind: {kind}"]
    lines += [f"{k}: {v}" for k, v in fields.items()]
    return "\n".join(lines) + "\n"


def _open(text: str, kind: str) -> tuple[GroupParams, dict]:
    fields = parse_kv(text)
    if fields.get("kind") != kind:
        raise BadTagError(f"expected a {kind} file, got {fields.get('kind')!r}")
    try:
        params = get_params(fields.get("paramset", ""))
    except KeyError as exc:
        raise ParamsetMismatch(str(exc)) from None
    return params, fields


def _hex(fields: dict, key: str) -> bytes:
    try:
        return bytes.fromhex(fields[key])
    except KeyError:
        raise DecodeError(f"missing field {key!r}") from None
    except ValueError:
        raise DecodeError(f"field {key!r} is not hex") from None


def system_params_to_text(sys: SystemParams) -> str:
    g = sys.group
    return _envelope("system-params", g, P0=encode_point(sys.P0, g).hex())


def system_params_from_text(text: str) -> SystemParams:
    g, f = _open(text, "system-params")
    return SystemParams(g, decode_point(_hex(f, "P0"), g))


def master_key_to_text(msk: MasterKey, params: GroupParams) -> str:
    return _envelope("master-key", params, s=encode_scalar(msk.s, params).hex())


def master_key_from_text(text: str) -> MasterKey:
    g, f = _open(text, "master-key")
    s = decode_scalar(_hex(f, "s"), g)
    if s == 0:
        raise DecodeError("master key must be non-zero")
    return MasterKey(s)


def terminal_keys_to_text(keys: TerminalKeys, params: GroupParams) -> str:
    return _envelope(
        "terminal-keys",
        params,
        id=keys.identity.id_bytes.hex(),
        Q=encode_point(keys.Q, params).hex(),
        D=encode_point(keys.D, params).hex(),
        x=encode_scalar(keys.x, params).hex(),
        Ppub=encode_point(keys.Ppub, params).hex(),
    )


def terminal_keys_from_text(text: str) -> TerminalKeys:
    g, f = _open(text, "terminal-keys")
    return TerminalKeys(
        identity=Identity(_hex(f, "id")),
        Q=decode_point(_hex(f, "Q"), g),
        D=decode_point(_hex(f, "D"), g),
        x=decode_scalar(_hex(f, "x"), g),
        Ppub=decode_point(_hex(f, "Ppub"), g),
    )


def record_to_text(rec: RegistrationRecord, params: GroupParams) -> str:
    return _envelope(
        "registration-record",
        params,
        id=rec.identity.id_bytes.hex(),
        Q=encode_point(rec.Q, params).hex(),
        Ppub=encode_point(rec.Ppub, params).hex(),
    )


def record_from_text(text: str) -> RegistrationRecord:
    g, f = _open(text, "registration-record")
    return RegistrationRecord(
        identity=Identity(_hex(f, "id")),
        Q=decode_point(_hex(f, "Q"), g),
        Ppub=decode_point(_hex(f, "Ppub"), g),
    )


def signature_to_text(sig: Signature, params: GroupParams) -> str:
    extra = {"n": str(sig.n)} if isinstance(sig, AggregateSignature) else {}
    return _envelope("signature", params, sig=encode_signature(sig, params).hex(), **extra)


def signature_from_text(text: str) -> Signature:
    g, f = _open(text, "signature")
    sig = decode_signature(_hex(f, "sig"), g)
    if isinstance(sig, AggregateSignature) and "n" in f:
        sig = AggregateSignature(sig.R, sig.V, int(f["n"]))
    return sig


def state_from_hex(text: str) -> StateInfo:
    return StateInfo(bytes.fromhex(text.strip()))
