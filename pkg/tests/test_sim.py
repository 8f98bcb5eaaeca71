import random

import pytest

from vdas.errors import ConfigError, EmptyInputError
from vdas.sim import (
    BROADCAST,
    CSV_COLUMNS,
    FAULT_KINDS,
    UPLINK,
    FaultDescriptor,
    SimConfig,
    Simulation,
    inject_fault,
    parse_fault_plan,
    reports_to_csv,
    reports_to_text,
    run_simulation,
    summarize,
)
from vdas.wire import signature_len
from vdas.algebra import get_params


def test_zero_terminals_is_config_error():
    with pytest.raises(ConfigError):
        run_simulation(SimConfig(n_terminals=0))


@pytest.mark.parametrize(
    "plan",
    [
        [FaultDescriptor(1, 5, "flip-data")],
        [FaultDescriptor(3, 0, "flip-data")],
        [FaultDescriptor(1, 0, "melt")],
        [FaultDescriptor(1, 0, "flip-data"), FaultDescriptor(1, 0, "forge-random-V")],
    ],
)
def test_bad_fault_plans(plan):
    with pytest.raises(ConfigError):
        run_simulation(SimConfig(n_terminals=5, rounds=2, fault_plan=plan))


def test_inject_fault_validates_kind():
    assert inject_fault("drop-signature", 2).kind == "drop-signature"
    with pytest.raises(ConfigError):
        inject_fault("unplug", 0)


def test_honest_run_n50():
    reports = run_simulation(SimConfig(n_terminals=50, rounds=3, rng_seed=b"honest"))
    assert [r.verdict for r in reports] == [True] * 3
    toy = get_params("toy-64")
    assert {r.aggregate_bytes for r in reports} == {signature_len(toy)}
    assert all(r.culprits == () for r in reports)
    assert all(r.ops["pairings"] == 3 for r in reports)
    assert all(r.links[UPLINK][0] == 50 and r.links[BROADCAST][0] == 50 for r in reports)


def test_flip_fault_localized():
    plan = [FaultDescriptor(2, 13, "flip-data")]
    reports = run_simulation(SimConfig(n_terminals=20, rounds=3, rng_seed=b"loc", fault_plan=plan))
    assert [r.verdict for r in reports] == [True, False, True]
    assert reports[1].culprits == (13,)
    # fallback path costs 3 + 3n pairings
    assert reports[1].ops["pairings"] == 3 + 3 * 20


def test_drop_signature_is_shape_error():
    sim = Simulation(SimConfig(n_terminals=6, rng_seed=b"drop"))
    sim.inject_fault("drop-signature", 4)
    report = sim.run_round()
    assert not report.verdict
    assert report.error.startswith("shape")
    assert report.culprits == (4,)
    assert report.n_signatures == 5


def test_fault_applies_once():
    sim = Simulation(SimConfig(n_terminals=4, rounds=2, rng_seed=b"once"))
    sim.inject_fault("replace-pubkey", 1)
    assert sim.run_round().culprits == (1,)
    assert sim.run_round().verdict


@pytest.mark.parametrize("kind", ["flip-data", "replace-pubkey", "reuse-old-delta", "forge-random-V"])
def test_each_kind_rejected(kind):
    reports = run_simulation(
        SimConfig(n_terminals=5, rounds=2, rng_seed=kind.encode(), fault_plan=[FaultDescriptor(2, 2, kind)])
    )
    assert reports[0].verdict and not reports[1].verdict
    assert reports[1].culprits == (2,)


def test_reuse_old_delta_over_trials():
    for t in range(20):
        rep = run_simulation(
            SimConfig(n_terminals=3, rounds=1, rng_seed=b"replay%d" % t, fault_plan=[FaultDescriptor(1, t % 3, "reuse-old-delta")])
        )[0]
        assert not rep.verdict and rep.culprits == (t % 3,)


def test_localization_soundness_random_plans():
    kinds = ["flip-data", "replace-pubkey", "reuse-old-delta", "forge-random-V"]
    for t in range(100):
        rng = random.Random(t)
        n = rng.randrange(2, 8)
        targets = rng.sample(range(n), rng.randrange(1, n + 1))
        plan = [FaultDescriptor(1, i, rng.choice(kinds)) for i in targets]
        rep = run_simulation(SimConfig(n_terminals=n, rounds=1, rng_seed=b"plan%d" % t, fault_plan=plan))[0]
        assert not rep.verdict
        assert rep.culprits == tuple(sorted(targets))


def test_honest_terminals_still_verify_in_faulted_round():
    sim = Simulation(SimConfig(n_terminals=5, rng_seed=b"live"))
    sim.inject_fault("forge-random-V", 0)
    report = sim.run_round()
    # the fallback verified every upload individually; only the forger failed
    assert report.culprits == (0,)
    assert report.ops["pairings"] == 3 + 3 * 5


def test_caller_supplied_deltas():
    deltas = [b"first-session", b"second-session"]
    reports = run_simulation(SimConfig(n_terminals=3, rounds=2, deltas=deltas))
    assert [r.delta for r in reports] == [d.hex() for d in deltas]
    with pytest.raises(ConfigError):
        run_simulation(SimConfig(n_terminals=3, rounds=3, deltas=deltas))


def test_deterministic_reports():
    cfg = SimConfig(n_terminals=8, rounds=3, rng_seed=b"det", fault_plan=[FaultDescriptor(2, 1, "forge-random-V")])
    a, b = run_simulation(cfg), run_simulation(cfg)
    assert reports_to_text(a) == reports_to_text(b)
    assert reports_to_csv(a) == reports_to_csv(b)
    assert reports_to_text(run_simulation(SimConfig(n_terminals=8, rounds=3, rng_seed=b"other"))) != reports_to_text(a)


def test_csv_export():
    reports = run_simulation(SimConfig(n_terminals=3, rounds=2))
    lines = reports_to_csv(reports).splitlines()
    assert lines[0].split(",") == list(CSV_COLUMNS)
    assert len(lines) == 3


def test_summarize():
    with pytest.raises(EmptyInputError):
        summarize([])
    s = summarize(run_simulation(SimConfig(n_terminals=4, rounds=3)))
    assert s.acceptance_rate == 1.0 and s.mean_pairings == 3


@pytest.mark.parametrize("n", [5, 20, 50])
def test_pairings_and_bytes_constant_in_n(n):
    s = summarize(run_simulation(SimConfig(n_terminals=n, rounds=2, rng_seed=b"n%d" % n)))
    assert s.mean_pairings == 3
    assert s.mean_aggregate_bytes == signature_len(get_params("toy-64"))


def test_parse_fault_plan():
    plan = parse_fault_plan("# comment\n2, 4, flip-data\n3 0 drop-signature\n\n")
    assert plan == [FaultDescriptor(2, 4, "flip-data"), FaultDescriptor(3, 0, "drop-signature")]
    for bad in ("1, 2\n", "x, 2, flip-data\n", "1, 2, explode\n"):
        with pytest.raises(ConfigError):
            parse_fault_plan(bad)


def test_all_fault_kinds_listed():
    assert set(FAULT_KINDS) == {"flip-data", "replace-pubkey", "reuse-old-delta", "drop-signature", "forge-random-V"}
