"""Command-line front end.

Exit status: 0 success, 1 verification failure (or accepted forgery in the
tamper suite), 2 usage or format error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, core, security, sim, wire
from .algebra import PARAMSETS, get_params, params_to_text
from .errors import VdasError

EXIT_OK, EXIT_REJECT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _seed(text: str) -> bytes:
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be hex, got {text!r}") from None


def _read(path) -> str:
    return Path(path).read_text()


def _write(path, text: str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text)


def _read_data(path) -> bytes:
    raw = "".join(_read(path).split())
    try:
        return bytes.fromhex(raw)
    except ValueError:
        raise UsageError(f"{path}: data files hold hex text") from None


def cmd_keygen(args) -> int:
    group = get_params(args.paramset)
    sysp, msk = core.setup(group, args.seed)
    out = Path(args.out or ".")
    _write(out / "group.params", params_to_text(group))
    _write(out / "system.params", wire.system_params_to_text(sysp))
    _write(out / "master.key", wire.master_key_to_text(msk, group))
    print(f"wrote {out / 'system.params'} and {out / 'master.key'}")
    return EXIT_OK


def cmd_register(args) -> int:
    sysp = wire.system_params_from_text(_read(args.sys))
    msk = wire.master_key_from_text(_read(args.master))
    ident = core.Identity(args.id.encode())
    keys = core.register(sysp, msk, ident, args.seed)
    if not core.partial_key_valid(sysp, keys.Q, keys.D):
        raise UsageError("partial key failed the pairing check; master key does not match system params")
    out = Path(args.out or ".")
    stem = ident.id_bytes.hex()
    _write(out / f"{stem}.key", wire.terminal_keys_to_text(keys, sysp.group))
    _write(out / f"{stem}.rec", wire.record_to_text(keys.record(), sysp.group))
    print(f"wrote {out / (stem + '.key')} and {out / (stem + '.rec')}")
    return EXIT_OK


def cmd_sign(args) -> int:
    sysp = wire.system_params_from_text(_read(args.sys))
    keys = wire.terminal_keys_from_text(_read(args.key))
    delta = wire.state_from_hex(args.delta)
    sig = core.sign(sysp, keys, delta, _read_data(args.data), args.seed)
    text = wire.signature_to_text(sig, sysp.group)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_aggregate(args) -> int:
    sigs = [wire.signature_from_text(_read(p)) for p in args.signatures]
    if any(isinstance(s, core.AggregateSignature) for s in sigs):
        raise UsageError("only individual signatures can be aggregated")
    group = get_params(wire.parse_kv(_read(args.signatures[0]))["paramset"]) if sigs else None
    agg = core.aggregate(sigs)
    text = wire.signature_to_text(agg, group)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    sysp = wire.system_params_from_text(_read(args.sys))
    records = [wire.record_from_text(_read(p)) for p in args.record]
    data = [_read_data(p) for p in args.data]
    delta = wire.state_from_hex(args.delta)
    sig = wire.signature_from_text(_read(args.sig))
    for rec in records:
        if not core.validate_record(sysp, rec):
            raise UsageError(f"registration record for {rec.identity.id_bytes!r} is invalid")
    faithful = args.faithful_table3
    if isinstance(sig, core.IndividualSignature):
        if len(records) != 1 or len(data) != 1:
            raise UsageError("an individual signature needs exactly one record and one data file")
        ok = core.verify_individual(sysp, records[0], delta, data[0], sig, faithful=faithful)
    else:
        ok = core.aggregate_verify(sysp, records, delta, data, sig, faithful=faithful)
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_REJECT


def cmd_simulate(args) -> int:
    plan = sim.parse_fault_plan(_read(args.faults)) if args.faults else []
    cfg = sim.SimConfig(
        n_terminals=args.n,
        rounds=args.rounds,
        rng_seed=args.seed,
        fault_plan=plan,
        paramset=args.paramset,
        faithful=args.faithful_table3,
    )
    reports = sim.run_simulation(cfg)
    text = sim.reports_to_text(reports)
    if args.out:
        _write(f"{args.out}.txt", text)
        _write(f"{args.out}.csv", sim.reports_to_csv(reports))
    else:
        sys.stdout.write(text)
    s = sim.summarize(reports)
    print(
        f"rounds={s.rounds} acceptance_rate={s.acceptance_rate:.3f} "
        f"mean_pairings={s.mean_pairings:.2f} mean_aggregate_bytes={s.mean_aggregate_bytes:.1f}"
    )
    return EXIT_OK


def cmd_bench(args) -> int:
    t = bench.measure_primitives(args.paramset, args.iterations)
    rows = [
        {"operation": "multiplication", "local_ms": round(t.mult_ms, 4), "table1_ms": bench.TABLE_I.mult_ms},
        {"operation": "hash", "local_ms": round(t.hash_ms, 4), "table1_ms": bench.TABLE_I.hash_ms},
        {"operation": "pairing", "local_ms": round(t.pairing_ms, 4), "table1_ms": bench.TABLE_I.pairing_ms},
    ]
    print(f"paramset={args.paramset} iterations={args.iterations}")
    for r in rows:
        print(f"{r['operation']:>15}  local={r['local_ms']:>9.4f} ms  reference={r['table1_ms']:.3f} ms")
    if args.out:
        bench.write_csv(rows, args.out)
    return EXIT_OK


def cmd_cost_model(args) -> int:
    timings = bench.TABLE_I
    if args.local:
        timings = bench.measure_primitives(args.paramset, args.iterations)
    rows = bench.cost_table(timings, args.n)
    cols = list(rows[0])
    print(",".join(cols))
    for r in rows:
        print(",".join(str(r[c]) for c in cols))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        bench.write_csv(rows, out / "cost_model.csv")
        bench.emit_figures(timings, list(range(1, args.n_max + 1)), out)
        print(f"wrote cost_model.csv, sign_time.csv, verify_time.csv to {out}")
    return EXIT_OK


def cmd_tamper_suite(args) -> int:
    group = get_params(args.paramset)
    sysp, msk = core.setup(group, args.seed)
    cfg = security.TamperConfig(
        trials={a: args.trials for a in security.ATTACKS},
        seed=args.seed,
        master_key=msk,
        batch_size=args.n,
    )
    report = security.run_tamper_suite(sysp, cfg)
    text = report.to_text()
    if args.out:
        _write(args.out, text)
        print(text.splitlines()[-1])
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.false_accepts == 0 else EXIT_REJECT


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--paramset", choices=PARAMSETS, default="toy-64")
    common.add_argument("--seed", type=_seed, default=b"\x00", help="hex-encoded RNG seed")
    common.add_argument("--out", help="output file or directory")

    parser = argparse.ArgumentParser(prog="vdas", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", parents=[common], help="KGC setup: system params and master key")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("register", parents=[common], help="enrol a terminal")
    p.add_argument("--sys", required=True)
    p.add_argument("--master", required=True)
    p.add_argument("--id", required=True, help="terminal identity (text)")
    p.set_defaults(func=cmd_register)

    p = sub.add_parser("sign", parents=[common], help="individual signature on a hex data file")
    p.add_argument("--sys", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--delta", required=True, help="state information, hex")
    p.add_argument("--data", required=True)
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("aggregate", parents=[common], help="sum individual signatures")
    p.add_argument("signatures", nargs="+")
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("verify", parents=[common], help="verify an individual or aggregate signature")
    p.add_argument("--sys", required=True)
    p.add_argument("--record", nargs="+", required=True)
    p.add_argument("--data", nargs="+", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--faithful-table3", action="store_true", help="recompute Q_i = H1(ID_i)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", parents=[common], help="run the terminal/data-center simulation")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--rounds", type=int, default=3)
    p.add_argument("--faults", help="fault plan file: 'round, terminal, kind' per line")
    p.add_argument("--faithful-table3", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bench", parents=[common], help="time the primitive operations")
    p.add_argument("--iterations", type=int, default=50)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("cost-model", parents=[common], help="op-count cost model and figure data")
    p.add_argument("--n", type=int, default=10, help="batch size for the verification column")
    p.add_argument("--n-max", type=int, default=100, help="largest n in verify_time.csv")
    p.add_argument("--local", action="store_true", help="use locally measured timings")
    p.add_argument("--iterations", type=int, default=20)
    p.set_defaults(func=cmd_cost_model)

    p = sub.add_parser("tamper-suite", parents=[common], help="scripted attacks; counts false accepts")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--n", type=int, default=3, help="batch size per trial")
    p.set_defaults(func=cmd_tamper_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, VdasError, ValueError, KeyError, OSError) as exc:
        code = exc.code if isinstance(exc, VdasError) else type(exc).__name__
        print(f"vdas {args.command}: {code}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
