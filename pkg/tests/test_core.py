import hashlib
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import repeated_add
from vdas.algebra import hash_to_point, pairing, point_add, point_mul, recording
from vdas.core import (
    AggregateSignature,
    Identity,
    IndividualSignature,
    RegistrationRecord,
    StateInfo,
    aggregate,
    aggregate_verify,
    extract_partial_key,
    partial_key_valid,
    register,
    setup,
    sign,
    user_keygen,
    validate_record,
    verify_individual,
)
from vdas.errors import EmptyBatchError, ShapeError


def batch(sysp, msk, n, seed, delta=None):
    keys = [register(sysp, msk, Identity(b"%s-id-%d" % (seed, i)), b"%s-x-%d" % (seed, i)) for i in range(n)]
    data = [hashlib.sha256(b"%s-data-%d" % (seed, i)).digest() for i in range(n)]
    delta = delta or StateInfo(hashlib.sha256(seed + b"-delta").digest()[:16])
    sigs = [sign(sysp, k, delta, d, b"%s-r-%d" % (seed, i)) for i, (k, d) in enumerate(zip(keys, data))]
    return keys, data, delta, sigs


# -- setup / registration -------------------------------------------------------

def test_setup_with_unit_master_key(toy):
    sysp, msk = setup(toy, b"any", s=1)
    assert sysp.P0 == toy.P and msk.s == 1


def test_setup_deterministic(toy):
    assert setup(toy, b"seed") == setup(toy, b"seed")
    assert setup(toy, b"seed")[1] != setup(toy, b"seed2")[1]


def test_setup_master_public_key_pairing(toy):
    sysp, msk = setup(toy, b"pairing-check")
    e = pairing(toy.P, toy.P, toy)
    assert pairing(sysp.P0, toy.P, toy) == e ** msk.s
    assert 1 <= msk.s < toy.q


def test_setup_rejects_zero_key(toy):
    with pytest.raises(ValueError):
        setup(toy, b"", s=0)


def test_partial_key_with_unit_master_key(toy):
    sysp, msk = setup(toy, b"", s=1)
    Q, D = extract_partial_key(msk, Identity(b"dev"), sysp)
    assert Q == D


def test_partial_key_pairing_relation(toy_system):
    sysp, msk = toy_system
    Q, D = extract_partial_key(msk, Identity(b"random-identity-77"), sysp)
    assert pairing(D, sysp.group.P, sysp.group) == pairing(Q, sysp.P0, sysp.group)
    assert partial_key_valid(sysp, Q, D)
    assert not partial_key_valid(sysp, Q, point_add(D, sysp.group.P))


def test_identity_points_distinct(toy_system):
    sysp, msk = toy_system
    rng = random.Random(2)
    qs = {extract_partial_key(msk, Identity(rng.randbytes(12)), sysp)[0] for _ in range(100)}
    assert len(qs) == 100


def test_user_keygen(toy_system):
    sysp, _ = toy_system
    x, Ppub = user_keygen(sysp, b"", x=1)
    assert Ppub == sysp.group.P
    x, Ppub = user_keygen(sysp, b"user-seed")
    assert (x, Ppub) == user_keygen(sysp, b"user-seed")
    small, Psmall = user_keygen(sysp, b"", x=321)
    P = sysp.group.P
    assert (Psmall.x, Psmall.y) == repeated_add(321, (P.x, P.y), sysp.group.p)


def test_identity_and_state_nonempty():
    with pytest.raises(ValueError):
        Identity(b"")
    with pytest.raises(ValueError):
        StateInfo(b"")


def test_validate_record(toy_system, toy_terminals):
    sysp, _ = toy_system
    rec = toy_terminals[0].record()
    assert validate_record(sysp, rec)
    bad = RegistrationRecord(rec.identity, toy_terminals[1].Q, rec.Ppub)
    assert not validate_record(sysp, bad)


# -- signing ----------------------------------------------------------------------

def test_sign_verify_individual(toy_system, toy_terminals, delta):
    sysp, _ = toy_system
    for i, keys in enumerate(toy_terminals):
        sig = sign(sysp, keys, delta, b"reading-%d" % i, b"nonce-%d" % i)
        assert verify_individual(sysp, keys.record(), delta, b"reading-%d" % i, sig)


def test_sign_op_counts(toy_system, toy_terminals, delta):
    sysp, _ = toy_system
    with recording() as ops:
        sign(sysp, toy_terminals[0], delta, b"d", b"n")
    assert (ops.scalar_mults, ops.map_hashes, ops.pairings) == (3, 1, 0)


GOLDEN_R = (0xB8BBEEAE23DFFA1, 0x9954C4EB69FC36AE)
GOLDEN_V = (0x4F9E612240C2CAEE, 0x7F65F97062B44875)


def test_golden_signature(toy):
    sysp, msk = setup(toy, b"golden-kgc")
    keys = register(sysp, msk, Identity(b"golden-terminal"), b"golden-x")
    delta = StateInfo(b"golden-delta")
    sig = sign(sysp, keys, delta, b"golden-data", b"golden-r")
    assert (sig.R.x, sig.R.y) == GOLDEN_R
    assert (sig.V.x, sig.V.y) == GOLDEN_V
    # both sides of the verification equation, evaluated longhand
    from vdas.core import _g, _h, state_point

    h = _h(b"golden-data", delta, keys.identity, toy)
    g = _g(b"golden-data", delta, keys.Ppub, toy)
    U = state_point(sysp, delta)
    lhs = pairing(sig.V, toy.P, toy)
    rhs = pairing(point_mul(g, keys.Q), sysp.P0, toy) * pairing(point_add(point_mul(h, keys.Ppub), sig.R), U, toy)
    assert lhs == rhs
    # e(V, P) == e(Q, P)^(g s) * e(U, P)^(x h) * e(R, U), expanded by bilinearity
    assert lhs == pairing(keys.Q, toy.P, toy) ** (g * msk.s) * pairing(U, toy.P, toy) ** (keys.x * h) * (
        pairing(sig.R, U, toy)
    )


def test_bit_flips_rejected(toy_system, toy_terminals, delta):
    sysp, _ = toy_system
    keys = toy_terminals[0]
    data = hashlib.sha256(b"payload").digest()
    sig = sign(sysp, keys, delta, data, b"nonce")
    rng = random.Random(4)
    accepts = 0
    for _ in range(100):
        bit = rng.randrange(8 * len(data))
        flipped = bytearray(data)
        flipped[bit // 8] ^= 1 << (bit % 8)
        accepts += verify_individual(sysp, keys.record(), delta, bytes(flipped), sig)
    assert accepts == 0


def test_identity_R_rejected(toy_system, toy_terminals, delta):
    sysp, _ = toy_system
    sig = sign(sysp, toy_terminals[0], delta, b"d", b"n")
    forged = IndividualSignature(sysp.group.identity, sig.V)
    assert not verify_individual(sysp, toy_terminals[0].record(), delta, b"d", forged)


def test_malformed_points_rejected_not_raised(toy_system, toy_terminals, delta):
    sysp, _ = toy_system
    sig = sign(sysp, toy_terminals[0], delta, b"d", b"n")
    off = type(sig.V)(sig.V.x, (sig.V.y + 1) % sysp.group.p, sysp.group.p)
    assert not verify_individual(sysp, toy_terminals[0].record(), delta, b"d", IndividualSignature(sig.R, off))
    assert not verify_individual(sysp, toy_terminals[0].record(), delta, b"d", None)


# -- aggregation -------------------------------------------------------------------

def test_aggregate_single(toy_system, toy_terminals, delta):
    sysp, _ = toy_system
    sig = sign(sysp, toy_terminals[0], delta, b"d", b"n")
    agg = aggregate([sig])
    assert (agg.R, agg.V, agg.n) == (sig.R, sig.V, 1)


def test_aggregate_permutation_invariant(toy_system):
    sysp, msk = toy_system
    _, _, _, sigs = batch(sysp, msk, 6, b"perm")
    agg = aggregate(sigs)
    rng = random.Random(8)
    for _ in range(5):
        shuffled = sigs[:]
        rng.shuffle(shuffled)
        assert aggregate(shuffled) == agg


def test_aggregate_three_matches_sequential_adds(toy_system):
    sysp, msk = toy_system
    _, _, _, sigs = batch(sysp, msk, 3, b"three")
    agg = aggregate(sigs)
    from oracles import affine_add

    p = sysp.group.p
    R = affine_add(affine_add((sigs[0].R.x, sigs[0].R.y), (sigs[1].R.x, sigs[1].R.y), p), (sigs[2].R.x, sigs[2].R.y), p)
    V = affine_add(affine_add((sigs[0].V.x, sigs[0].V.y), (sigs[1].V.x, sigs[1].V.y), p), (sigs[2].V.x, sigs[2].V.y), p)
    assert ((agg.R.x, agg.R.y), (agg.V.x, agg.V.y)) == (R, V)


def test_aggregate_empty():
    with pytest.raises(EmptyBatchError):
        aggregate([])


def test_aggregate_verify_honest_batch_of_ten(toy_system):
    sysp, msk = toy_system
    keys, data, delta, sigs = batch(sysp, msk, 10, b"ten")
    records = [k.record() for k in keys]
    assert aggregate_verify(sysp, records, delta, data, aggregate(sigs))
    assert aggregate_verify(sysp, records, delta, data, aggregate(sigs), faithful=True)


@pytest.mark.parametrize("n", [1, 5, 10, 20])
def test_aggregate_verify_op_counts(toy_system, n):
    sysp, msk = toy_system
    keys, data, delta, sigs = batch(sysp, msk, n, b"ops%d" % n)
    agg = aggregate(sigs)
    records = [k.record() for k in keys]
    with recording() as ops:
        assert aggregate_verify(sysp, records, delta, data, agg, faithful=True)
    assert (ops.pairings, ops.scalar_mults, ops.map_hashes) == (3, 2 * n, n + 1)
    with recording() as cached:
        assert aggregate_verify(sysp, records, delta, data, agg)
    assert (cached.pairings, cached.scalar_mults, cached.map_hashes) == (3, 2 * n, 1)


def test_aggregate_verify_shape_errors(toy_system):
    sysp, msk = toy_system
    keys, data, delta, sigs = batch(sysp, msk, 3, b"shape")
    records = [k.record() for k in keys]
    with pytest.raises(ShapeError):
        aggregate_verify(sysp, records, delta, data[:2], aggregate(sigs))
    with pytest.raises(EmptyBatchError):
        aggregate_verify(sysp, [], delta, [], aggregate(sigs))


def test_cross_swap_rejected(toy_system):
    sysp, msk = toy_system
    accepts = 0
    for t in range(100):
        keys, data, delta, sigs = batch(sysp, msk, 4, b"swap%d" % t)
        i, j = random.Random(t).sample(range(4), 2)
        data[i], data[j] = data[j], data[i]
        accepts += aggregate_verify(sysp, [k.record() for k in keys], delta, data, aggregate(sigs))
    assert accepts == 0


@pytest.mark.parametrize("n", [1, 2, 5, 10, 50])
def test_correctness_for_batch_sizes(toy_system, n):
    sysp, msk = toy_system
    keys, data, delta, sigs = batch(sysp, msk, n, b"size%d" % n)
    assert aggregate_verify(sysp, [k.record() for k in keys], delta, data, aggregate(sigs))


def test_duplicate_signers_allowed(toy_system, toy_terminals, delta):
    sysp, _ = toy_system
    k = toy_terminals[0]
    s1 = sign(sysp, k, delta, b"a", b"n1")
    s2 = sign(sysp, k, delta, b"b", b"n2")
    assert aggregate_verify(sysp, [k.record()] * 2, delta, [b"a", b"b"], aggregate([s1, s2]))


# -- unforgeability smoke tests ------------------------------------------------------

def test_pubkey_replacement_rejected(toy_system):
    sysp, msk = toy_system
    g = sysp.group
    for t in range(100):
        keys, data, delta, sigs = batch(sysp, msk, 3, b"pk%d" % t)
        records = [k.record() for k in keys]
        records[t % 3] = RegistrationRecord(records[t % 3].identity, records[t % 3].Q, point_mul(t + 2, g.P))
        assert not aggregate_verify(sysp, records, delta, data, aggregate(sigs))


def test_wrong_delta_rejected(toy_system):
    sysp, msk = toy_system
    for t in range(100):
        keys, data, delta, sigs = batch(sysp, msk, 3, b"dl%d" % t)
        other = StateInfo(delta.delta + b"!")
        assert not aggregate_verify(sysp, [k.record() for k in keys], other, data, aggregate(sigs))


def test_foreign_session_injection_rejected(toy_system):
    sysp, msk = toy_system
    for t in range(100):
        keys, data, delta, sigs = batch(sysp, msk, 3, b"inj%d" % t)
        stale = sign(sysp, keys[1], StateInfo(b"old-session-%d" % t), data[1], b"stale")
        sigs[1] = stale
        assert not aggregate_verify(sysp, [k.record() for k in keys], delta, data, aggregate(sigs))


def test_individual_equals_singleton_batch(toy_system):
    sysp, msk = toy_system
    rng = random.Random(21)
    for t in range(100):
        keys, data, delta, sigs = batch(sysp, msk, 1, b"single%d" % t)
        sig = sigs[0]
        if rng.random() < 0.5:
            data = [data[0] + b"x"]
        rec = keys[0].record()
        assert verify_individual(sysp, rec, delta, data[0], sig) == aggregate_verify(
            sysp, [rec], delta, data, aggregate([sig])
        )


def test_sub_batches_verify(toy_system):
    sysp, msk = toy_system
    keys, data, delta, sigs = batch(sysp, msk, 12, b"sub")
    records = [k.record() for k in keys]
    assert aggregate_verify(sysp, records, delta, data, aggregate(sigs))
    assert all(verify_individual(sysp, r, delta, d, s) for r, d, s in zip(records, data, sigs))
    rng = random.Random(13)
    for _ in range(50):
        idx = sorted(rng.sample(range(12), rng.randrange(1, 13)))
        assert aggregate_verify(
            sysp, [records[i] for i in idx], delta, [data[i] for i in idx], aggregate([sigs[i] for i in idx])
        )


@settings(max_examples=30, deadline=None)
@given(data=st.lists(st.binary(min_size=0, max_size=64), min_size=1, max_size=6), delta=st.binary(min_size=1, max_size=40))
def test_correctness_property(toy_system, toy_terminals, data, delta):
    sysp, _ = toy_system
    d = StateInfo(delta)
    keys = toy_terminals[: len(data)]
    sigs = [sign(sysp, k, d, m, b"p%d" % i) for i, (k, m) in enumerate(zip(keys, data))]
    assert aggregate_verify(sysp, [k.record() for k in keys], d, data, aggregate(sigs))
