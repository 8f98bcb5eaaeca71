"""Executable algebra behind the unforgeability argument.

Two identities are checked here: a challenger that programs U = lam*P - P0
can produce valid signatures without any partial private key, and two
signatures that differ only in g expose D = (g - g')^-1 (V - V').  The
tamper suite then runs scripted attacks against the real scheme.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Optional

from .algebra import G1Point, GroupParams, pairing, point_add, point_mul
from .core import (
    Identity,
    IndividualSignature,
    MasterKey,
    RegistrationRecord,
    StateInfo,
    SystemParams,
    aggregate,
    aggregate_verify,
    random_scalar,
    register,
    sign,
    state_point,
    verify_individual,
    _g,
)
from .errors import ConfigError, NonInvertibleError


@dataclass(frozen=True)
class SimulatedOracleState:
    group: GroupParams
    lam: int
    U_sim: G1Point
    a_point: G1Point  # plays P0
    b_point: Optional[G1Point] = None  # plays the target Q

    @classmethod
    def program(cls, group: GroupParams, P0: G1Point, lam: int, b_point: Optional[G1Point] = None):
        U = point_add(point_mul(lam, group.P), -P0)
        return cls(group, lam % group.q, U, P0, b_point)

    def check(self) -> bool:
        return self.U_sim == point_add(point_mul(self.lam, self.group.P), -self.a_point)


@dataclass(frozen=True)
class CdhInstance:
    P: G1Point
    aP: G1Point
    bP: G1Point
    a: Optional[int] = field(default=None, repr=False)
    b: Optional[int] = field(default=None, repr=False)

    @classmethod
    def random(cls, group: GroupParams, seed: bytes) -> "CdhInstance":
        a = random_scalar(seed, b"cdh-a", group.q)
        b = random_scalar(seed, b"cdh-b", group.q)
        return cls(group.P, point_mul(a, group.P), point_mul(b, group.P), a, b)


def equation_holds(
    group: GroupParams,
    P0: G1Point,
    Q: G1Point,
    Ppub: G1Point,
    h: int,
    g: int,
    sig: IndividualSignature,
    U: G1Point,
) -> bool:
    """e(V, P) == e(g*Q, P0) * e(h*Ppub + R, U) with h, g and U supplied."""
    lhs = pairing(sig.V, group.P, group)
    rhs = pairing(point_mul(g, Q), P0, group) * pairing(point_add(point_mul(h, Ppub), sig.R), U, group)
    return lhs == rhs


def simulate_sign(
    state: SimulatedOracleState,
    Q: G1Point,
    Ppub: G1Point,
    h: int,
    g: int,
    rng_seed: bytes,
) -> IndividualSignature:
    """Signature on (Q, Ppub) under the programmed U, using no private key.

    R = r*P + g*Q - h*Ppub and V = lam*g*Q + r*lam*P - r*P0.
    """
    grp = state.group
    q = grp.q
    r = random_scalar(rng_seed, b"sim-nonce", q)
    R = point_add(point_add(point_mul(r, grp.P), point_mul(g, Q)), -point_mul(h, Ppub))
    V = point_add(
        point_add(point_mul(state.lam * g % q, Q), point_mul(r * state.lam % q, grp.P)),
        -point_mul(r, state.a_point),
    )
    return IndividualSignature(R, V)


def forking_extract(V: G1Point, V_prime: G1Point, g: int, g_prime: int, group: GroupParams) -> G1Point:
    """(g - g')^-1 * (V - V') in G1; recovers D from a forked pair."""
    diff = (g - g_prime) % group.q
    if diff == 0:
        raise NonInvertibleError("g and g' coincide modulo q")
    return point_mul(pow(diff, -1, group.q), point_add(V, -V_prime))


# -- tamper suite -------------------------------------------------------------

ATTACKS = (
    "replace-pubkey",
    "master-key-forge",
    "flip-data",
    "cross-swap",
    "delta-mismatch",
    "session-inject",
)


@dataclass
class TamperConfig:
    trials: dict = field(default_factory=dict)  # attack name -> trial count
    seed: bytes = b"tamper"
    master_key: Optional[MasterKey] = None
    batch_size: int = 3


@dataclass(frozen=True)
class TrialOutcome:
    attack: str
    seed: str
    accepted: bool

    @property
    def verdict(self) -> str:
        return "accept" if self.accepted else "reject"


@dataclass
class TamperReport:
    outcomes: list = field(default_factory=list)

    @property
    def false_accepts(self) -> int:
        return sum(o.accepted for o in self.outcomes)

    def by_attack(self) -> dict:
        out: dict = {}
        for o in self.outcomes:
            acc, tot = out.get(o.attack, (0, 0))
            out[o.attack] = (acc + o.accepted, tot + 1)
        return out

    def to_text(self) -> str:
        lines = [f"attack={o.attack} seed={o.seed} verdict={o.verdict}" for o in self.outcomes]
        lines.append(f"false_accepts={self.false_accepts}/{len(self.outcomes)}")
        return "\n".join(lines) + "\n"


def _trial_seed(base: bytes, attack: str, i: int) -> bytes:
    return hashlib.sha256(base + attack.encode() + i.to_bytes(4, "big")).digest()[:8]


def _batch(sys, msk, seed, n):
    keys = [register(sys, msk, Identity(seed + b"/id%d" % i), seed + b"/x%d" % i) for i in range(n)]
    data = [hashlib.sha256(seed + b"/data%d" % i).digest() for i in range(n)]
    delta = StateInfo(hashlib.sha256(seed + b"/delta").digest()[:16])
    sigs = [sign(sys, k, delta, d, seed + b"/r%d" % i) for i, (k, d) in enumerate(zip(keys, data))]
    return keys, data, delta, sigs


def _attack(name: str, sys: SystemParams, msk: MasterKey, seed: bytes, n: int) -> bool:
    """Run one attack trial; return whether the verifier accepted the forgery."""
    grp = sys.group
    keys, data, delta, sigs = _batch(sys, msk, seed, n)
    records = [k.record() for k in keys]

    if name == "replace-pubkey":
        fake = point_mul(random_scalar(seed, b"x'", grp.q), grp.P)
        records[0] = RegistrationRecord(records[0].identity, records[0].Q, fake)
        return aggregate_verify(sys, records, delta, data, aggregate(sigs))

    if name == "master-key-forge":
        # knows s (hence D) but not x: guesses the x*h term with a random scalar
        target = keys[0]
        r = random_scalar(seed, b"forge-r", grp.q)
        guess = random_scalar(seed, b"forge-xh", grp.q)
        gs = _g(data[0], delta, target.Ppub, grp)
        D = point_mul(msk.s, target.Q)
        U = state_point(sys, delta)
        V = point_add(point_mul(gs, D), point_mul((guess + r) % grp.q, U))
        forged = IndividualSignature(point_mul(r, grp.P), V)
        return verify_individual(sys, records[0], delta, data[0], forged)

    if name == "flip-data":
        bit = random_scalar(seed, b"bit", 8 * len(data[0]) + 1) - 1
        flipped = bytearray(data[0])
        flipped[bit // 8] ^= 1 << (bit % 8)
        return verify_individual(sys, records[0], delta, bytes(flipped), sigs[0])

    if name == "cross-swap":
        swapped = list(data)
        swapped[0], swapped[1] = swapped[1], swapped[0]
        return aggregate_verify(sys, records, delta, swapped, aggregate(sigs))

    if name == "delta-mismatch":
        other = StateInfo(delta.delta + b"'")
        return aggregate_verify(sys, records, other, data, aggregate(sigs))

    if name == "session-inject":
        other = StateInfo(delta.delta + b"#")
        stale = sign(sys, keys[0], other, data[0], seed + b"/stale")
        return aggregate_verify(sys, records, delta, data, aggregate([stale] + sigs[1:]))

    raise ConfigError(f"unknown attack {name!r}")


def run_tamper_suite(sys: SystemParams, config: TamperConfig) -> TamperReport:
    report = TamperReport()
    if not any(config.trials.values()):
        return report
    unknown = set(config.trials) - set(ATTACKS)
    if unknown:
        raise ConfigError(f"unknown attacks: {', '.join(sorted(unknown))}")
    if config.master_key is None:
        raise ConfigError("tamper suite needs the master key to enrol terminals")
    n = max(2, config.batch_size)
    for name in ATTACKS:
        for i in range(config.trials.get(name, 0)):
            seed = _trial_seed(config.seed, name, i)
            accepted = _attack(name, sys, config.master_key, seed, n)
            report.outcomes.append(TrialOutcome(name, seed.hex(), accepted))
    return report
