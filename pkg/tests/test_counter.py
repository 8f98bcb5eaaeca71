import threading

from vdas.algebra import OpCounter, hash_to_point, pairing, paused, point_add, point_mul, recording


def test_counts_exact(toy):
    with recording() as ops:
        for k in range(7):
            point_mul(k + 1, toy.P)
    assert ops.scalar_mults == 7
    assert ops.pairings == 0


def test_no_counting_outside_session(toy):
    outer = OpCounter()
    with recording(outer):
        pass
    point_mul(3, toy.P)
    assert outer.scalar_mults == 0


def test_each_primitive_ticks_its_field(toy):
    with recording() as ops:
        point_mul(2, toy.P)
        point_add(toy.P, toy.P)
        pairing(toy.P, toy.P, toy)
        hash_to_point(b"m", toy)
    assert ops.snapshot() == {
        "scalar_mults": 1, "pairings": 1, "map_hashes": 1, "scalar_hashes": 0, "point_adds": 1,
    }


def test_paused_and_nested(toy):
    with recording() as outer:
        point_mul(2, toy.P)
        with paused():
            point_mul(2, toy.P)
        with recording() as inner:
            point_mul(2, toy.P)
        point_mul(2, toy.P)
    assert outer.scalar_mults == 2
    assert inner.scalar_mults == 1


def test_threads_do_not_interleave(toy):
    results = {}

    def work(name, k):
        with recording() as ops:
            for _ in range(k):
                point_mul(5, toy.P)
        results[name] = ops.scalar_mults

    threads = [threading.Thread(target=work, args=(i, i + 3)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results == {i: i + 3 for i in range(4)}
