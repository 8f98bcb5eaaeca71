"""Deterministic in-memory simulation of one KGC, n terminals and a data center.

Each round the data center broadcasts a state string, every terminal signs a
32-byte reading, and the data center aggregates and batch-verifies the
uploads.  A failed batch falls back to per-signature verification to name
the culprits.  Failed-round data is discarded after localization (policy).
"""
from __future__ import annotations

import csv
import hashlib
import io
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .algebra import GroupParams, get_params, point_len, point_mul, recording
from .core import (
    Identity,
    IndividualSignature,
    RegistrationRecord,
    StateInfo,
    aggregate,
    aggregate_verify,
    register,
    setup,
    sign,
    validate_record,
    verify_individual,
)
from .errors import ConfigError, EmptyInputError, ShapeError
from .wire import encode_signature, record_to_text, signature_len

FAULT_KINDS = ("flip-data", "replace-pubkey", "reuse-old-delta", "drop-signature", "forge-random-V")
DELTA_BYTES = 16
DATUM_BYTES = 32

UPLINK = "terminal->datacenter"
BROADCAST = "datacenter->terminals"
KGC_PUSH = "kgc->datacenter"
KGC_ISSUE = "kgc->terminal"


@dataclass(frozen=True)
class FaultDescriptor:
    round: int
    terminal: int
    kind: str

    def __str__(self) -> str:
        return f"{self.round},{self.terminal},{self.kind}"


@dataclass
class SimConfig:
    n_terminals: int
    rounds: int = 1
    rng_seed: bytes = b"vdas-sim"
    deltas: Optional[Sequence[bytes]] = None  # None: fresh random state per round
    fault_plan: Sequence[FaultDescriptor] = ()
    paramset: str = "toy-64"
    faithful: bool = False

    def validate(self) -> None:
        if self.n_terminals < 1:
            raise ConfigError("need at least one terminal")
        if self.rounds < 1:
            raise ConfigError("need at least one round")
        if self.deltas is not None:
            if len(self.deltas) < self.rounds:
                raise ConfigError("caller-supplied delta list is shorter than the round count")
            if not all(self.deltas[: self.rounds]):
                raise ConfigError("state strings must be non-empty")
        seen = set()
        for f in self.fault_plan:
            if f.kind not in FAULT_KINDS:
                raise ConfigError(f"unknown fault kind {f.kind!r}")
            if not 1 <= f.round <= self.rounds:
                raise ConfigError(f"fault round {f.round} outside 1..{self.rounds}")
            if not 0 <= f.terminal < self.n_terminals:
                raise ConfigError(f"fault terminal {f.terminal} outside 0..{self.n_terminals - 1}")
            if (f.round, f.terminal) in seen:
                raise ConfigError(f"two faults scheduled for terminal {f.terminal} in round {f.round}")
            seen.add((f.round, f.terminal))


@dataclass
class RoundReport:
    round: int
    delta: str
    verdict: bool
    culprits: tuple = ()
    error: Optional[str] = None
    n_signatures: int = 0
    aggregate_bytes: int = 0
    links: dict = field(default_factory=dict)  # link -> (messages, bytes)
    ops: dict = field(default_factory=dict)
    faults: tuple = ()

    def to_text(self) -> str:
        parts = [
            f"round={self.round}",
            f"delta={self.delta}",
            f"verdict={'true' if self.verdict else 'false'}",
            f"culprits={','.join(map(str, self.culprits)) or '-'}",
            f"error={self.error or '-'}",
            f"signatures={self.n_signatures}",
            f"aggregate_bytes={self.aggregate_bytes}",
        ]
        parts += [f"{k}={m}msg/{b}B" for k, (m, b) in sorted(self.links.items())]
        parts += [f"{k}={v}" for k, v in self.ops.items()]
        parts.append(f"faults={';'.join(map(str, self.faults)) or '-'}")
        return " ".join(parts)


def inject_fault(kind: str, target: int, round: int = 1) -> FaultDescriptor:
    """Validate and build a fault descriptor for ``target``'s next round."""
    if kind not in FAULT_KINDS:
        raise ConfigError(f"unknown fault kind {kind!r}")
    if target < 0:
        raise ConfigError("terminal index must be non-negative")
    return FaultDescriptor(round, target, kind)


class _Links:
    def __init__(self):
        self.counts: dict = {}

    def send(self, link: str, nbytes: int) -> None:
        m, b = self.counts.get(link, (0, 0))
        self.counts[link] = (m + 1, b + nbytes)


class Simulation:
    """Stateful event loop; :func:`run_simulation` is the usual entry point."""

    def __init__(self, config: SimConfig):
        config.validate()
        self.config = config
        self.group: GroupParams = get_params(config.paramset)
        self.rng = random.Random(int.from_bytes(hashlib.sha256(b"sim|" + config.rng_seed).digest(), "big"))
        self.pending: dict = {}
        self.round = 0
        self.registration_links = _Links()
        self._register()
        self.previous_delta = StateInfo(self._bytes(DELTA_BYTES))

    def _bytes(self, n: int) -> bytes:
        return self.rng.getrandbits(8 * n).to_bytes(n, "big")

    def _register(self) -> None:
        g = self.group
        self.sys, msk = setup(g, self._bytes(16))
        self.terminals = []
        self.records = []
        for i in range(self.config.n_terminals):
            ident = Identity(b"terminal-%04d" % i)
            keys = register(self.sys, msk, ident, self._bytes(16))
            self.registration_links.send(KGC_ISSUE, 2 * point_len(g))
            rec = keys.record()
            if not validate_record(self.sys, rec):
                raise ConfigError(f"registration record for terminal {i} failed validation")
            self.registration_links.send(KGC_PUSH, len(record_to_text(rec, g)))
            self.terminals.append(keys)
            self.records.append(rec)

    def inject_fault(self, kind: str, target: int) -> FaultDescriptor:
        if not 0 <= target < self.config.n_terminals:
            raise ConfigError(f"terminal {target} does not exist")
        desc = inject_fault(kind, target, self.round + 1)
        self.pending[target] = desc
        return desc

    def run_round(self) -> RoundReport:
        cfg, g = self.config, self.group
        self.round += 1
        faults, self.pending = self.pending, {}
        links = _Links()

        if cfg.deltas is not None:
            delta = StateInfo(bytes(cfg.deltas[self.round - 1]))
        else:
            delta = StateInfo(self._bytes(DELTA_BYTES))
        for _ in self.terminals:
            links.send(BROADCAST, len(delta.delta))

        records = list(self.records)
        data_list, sigs, uploaded = [], [], []
        for i, keys in enumerate(self.terminals):
            datum = self._bytes(DATUM_BYTES)
            nonce = self._bytes(16)
            fault = faults.get(i)
            kind = fault.kind if fault else None
            sig = sign(self.sys, keys, self.previous_delta if kind == "reuse-old-delta" else delta, datum, nonce)
            if kind == "flip-data":
                bit = self.rng.randrange(8 * DATUM_BYTES)
                flipped = bytearray(datum)
                flipped[bit // 8] ^= 1 << (bit % 8)
                datum = bytes(flipped)
            elif kind == "replace-pubkey":
                fake = point_mul(self.rng.randrange(1, g.q), g.P)
                records[i] = RegistrationRecord(records[i].identity, records[i].Q, fake)
            elif kind == "forge-random-V":
                sig = IndividualSignature(sig.R, point_mul(self.rng.randrange(1, g.q), g.P))
            data_list.append(datum)
            if kind == "drop-signature":
                links.send(UPLINK, len(datum))
                continue
            sigs.append(sig)
            uploaded.append(i)
            links.send(UPLINK, len(datum) + signature_len(g))

        report = RoundReport(
            round=self.round,
            delta=delta.delta.hex(),
            verdict=False,
            n_signatures=len(sigs),
            faults=tuple(sorted(faults.values(), key=lambda f: f.terminal)),
        )
        with recording() as ops:
            self._verify(report, records, delta, data_list, sigs, uploaded)
        report.ops = ops.snapshot()
        report.links = dict(links.counts)
        self.previous_delta = delta
        return report

    def _verify(self, report, records, delta, data_list, sigs, uploaded) -> None:
        g = self.group
        missing = tuple(i for i in range(len(records)) if i not in set(uploaded))
        if missing:
            # shape check happens before any pairing work; the rest of the
            # batch is still checked so other culprits are not masked
            exc = ShapeError(f"{len(sigs)} signatures for {len(records)} data items")
            report.error = f"{exc.code}: {exc}"
            records = [records[i] for i in uploaded]
            data_list = [data_list[i] for i in uploaded]
        culprits = list(missing)
        if sigs:
            agg = aggregate(sigs)
            report.aggregate_bytes = len(encode_signature(agg, g))
            ok = aggregate_verify(self.sys, records, delta, data_list, agg, faithful=self.config.faithful)
            if not ok:
                culprits += [
                    i
                    for i, rec, datum, sig in zip(uploaded, records, data_list, sigs)
                    if not verify_individual(self.sys, rec, delta, datum, sig)
                ]
            report.verdict = ok and not missing
        report.culprits = tuple(sorted(culprits))


def run_simulation(config: SimConfig) -> list[RoundReport]:
    sim = Simulation(config)
    by_round: dict = {}
    for f in config.fault_plan:
        by_round.setdefault(f.round, []).append(f)
    reports = []
    for r in range(1, config.rounds + 1):
        for f in by_round.get(r, ()):
            sim.inject_fault(f.kind, f.terminal)
        reports.append(sim.run_round())
    return reports


@dataclass(frozen=True)
class SimSummary:
    rounds: int
    acceptance_rate: float
    mean_pairings: float
    mean_aggregate_bytes: float
    mean_uplink_bytes: float


def summarize(reports: Sequence[RoundReport]) -> SimSummary:
    if not reports:
        raise EmptyInputError("no round reports to summarize")
    n = len(reports)
    return SimSummary(
        rounds=n,
        acceptance_rate=sum(r.verdict for r in reports) / n,
        mean_pairings=sum(r.ops.get("pairings", 0) for r in reports) / n,
        mean_aggregate_bytes=sum(r.aggregate_bytes for r in reports) / n,
        mean_uplink_bytes=sum(r.links.get(UPLINK, (0, 0))[1] for r in reports) / n,
    )


# -- export / import ----------------------------------------------------------

CSV_COLUMNS = (
    "round", "delta", "verdict", "culprits", "error", "signatures", "aggregate_bytes",
    "uplink_msgs", "uplink_bytes", "broadcast_msgs", "broadcast_bytes",
    "pairings", "scalar_mults", "map_hashes", "scalar_hashes", "point_adds", "faults",
)


def reports_to_text(reports: Iterable[RoundReport]) -> str:
    return "".join(r.to_text() + "\n" for r in reports)


def reports_to_csv(reports: Iterable[RoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        up = r.links.get(UPLINK, (0, 0))
        bc = r.links.get(BROADCAST, (0, 0))
        w.writerow([
            r.round, r.delta, int(r.verdict), ";".join(map(str, r.culprits)), r.error or "",
            r.n_signatures, r.aggregate_bytes, up[0], up[1], bc[0], bc[1],
            r.ops.get("pairings", 0), r.ops.get("scalar_mults", 0), r.ops.get("map_hashes", 0),
            r.ops.get("scalar_hashes", 0), r.ops.get("point_adds", 0),
            ";".join(map(str, r.faults)),
        ])
    return buf.getvalue()


def parse_fault_plan(text: str) -> list[FaultDescriptor]:
    """Read ``round, terminal, kind`` triples, one per line (commas optional)."""
    plan = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 3:
            raise ConfigError(f"line {lineno}: expected 'round, terminal, kind'")
        try:
            rnd, term = int(parts[0]), int(parts[1])
        except ValueError:
            raise ConfigError(f"line {lineno}: round and terminal must be integers") from None
        plan.append(inject_fault(parts[2], term, rnd))
    return plan
