"""Cost model and primitive timing.

Each comparison scheme is an op-count row (scalar multiplications S, pairings
P, map-to-point hashes H, group elements L); times are predicted as linear
combinations of per-operation timings.  Only VDAS itself is implemented and
can be measured; the other rows are cost descriptions.
"""
from __future__ import annotations

import csv
import os
import random
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .algebra import get_params, hash_to_point, pairing, point_mul


@dataclass(frozen=True)
class OpTimings:
    mult_ms: float
    hash_ms: float
    pairing_ms: float

    def __post_init__(self):
        if min(self.mult_ms, self.hash_ms, self.pairing_ms) <= 0:
            raise ValueError("timings must be strictly positive")


@dataclass(frozen=True)
class SchemeCost:
    name: str
    sign_S: int
    sign_H: int
    verify_P_per_n: int
    verify_S_per_n: int
    verify_H_per_n: int
    verify_const_P: int
    verify_const_S: int
    verify_const_H: int
    size_L_coeff_n: int
    size_L_const: int

    def verify_counts(self, n: int) -> tuple[int, int, int]:
        """(pairings, scalar mults, hashes) for an n-signer batch."""
        return (
            self.verify_P_per_n * n + self.verify_const_P,
            self.verify_S_per_n * n + self.verify_const_S,
            self.verify_H_per_n * n + self.verify_const_H,
        )

    def size_elements(self, n: int) -> int:
        return self.size_L_coeff_n * n + self.size_L_const

    def formulas(self) -> tuple[str, str, str]:
        return (
            _affine_str([("S", 0, self.sign_S), ("H", 0, self.sign_H)]),
            _affine_str([
                ("P", self.verify_P_per_n, self.verify_const_P),
                ("S", self.verify_S_per_n, self.verify_const_S),
                ("H", self.verify_H_per_n, self.verify_const_H),
            ]),
            _affine_str([("L", self.size_L_coeff_n, self.size_L_const)]),
        )


def _affine_str(terms) -> str:
    out = []
    for sym, a, b in terms:
        if a == 0 and b == 0:
            continue
        if a == 0:
            coef = str(b)
        elif b == 0:
            coef = "n" if a == 1 else f"{a}n"
        else:
            coef = f"({'n' if a == 1 else f'{a}n'}+{b})"
        out.append(f"{'' if coef == '1' else coef}{sym}")
    return "+".join(out)


# Reference hardware timings (ms) and the published signing times.
TABLE_I = OpTimings(mult_ms=3.629, hash_ms=0.477, pairing_ms=4.359)

SCHEMES = (
    SchemeCost("ZQWZ", 5, 3, 0, 2, 2, 5, 0, 3, 0, 2),
    SchemeCost("CWZY", 4, 2, 0, 2, 1, 4, 0, 2, 1, 1),
    SchemeCost("CSZ", 3, 0, 1, 2, 1, 1, 0, 0, 1, 1),
    SchemeCost("DHW", 4, 2, 0, 2, 1, 4, 0, 2, 0, 2),
    SchemeCost("CTMHH", 4, 2, 0, 2, 2, 4, 0, 0, 0, 2),
    SchemeCost("VDAS", 3, 1, 0, 2, 1, 3, 0, 1, 0, 2),
)
SCHEME_BY_NAME = {s.name: s for s in SCHEMES}

TABLE_II = {
    "ZQWZ": 19.685,
    "CWZY": 15.576,
    "CSZ": 10.983,
    "DHW": 15.597,
    "CTMHH": 15.576,
    "VDAS": 11.371,
}


def predict_sign_time(cost: SchemeCost, timings: OpTimings) -> float:
    return cost.sign_S * timings.mult_ms + cost.sign_H * timings.hash_ms


def predict_verify_time(cost: SchemeCost, timings: OpTimings, n: int) -> float:
    if n < 1:
        raise ValueError("n must be at least 1")
    P, S, H = cost.verify_counts(n)
    return P * timings.pairing_ms + S * timings.mult_ms + H * timings.hash_ms


def cost_table(timings: OpTimings = TABLE_I, n: int = 10) -> list[dict]:
    """One row per scheme: formulas, predicted times, and the published
    signing time with its residual against the prediction."""
    rows = []
    for s in SCHEMES:
        sign_f, verify_f, size_f = s.formulas()
        pred = predict_sign_time(s, timings)
        rows.append({
            "scheme": s.name,
            "signing": sign_f,
            "aggregate_verification": verify_f,
            "size": size_f,
            "predicted_sign_ms": round(pred, 3),
            "table2_sign_ms": TABLE_II[s.name],
            "residual_ms": round(TABLE_II[s.name] - pred, 3),
            f"predicted_verify_ms_n{n}": round(predict_verify_time(s, timings, n), 3),
        })
    return rows


def write_csv(rows: Sequence[dict], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def emit_figures(timings: OpTimings, n_range: Sequence[int], out_path) -> dict:
    """Write sign_time.csv and verify_time.csv (one column per scheme) into
    ``out_path``; returns the paths written."""
    if not n_range:
        raise ValueError("n_range must be non-empty")
    out = Path(out_path)
    out.mkdir(parents=True, exist_ok=True)
    if not os.access(out, os.W_OK):
        raise PermissionError(f"cannot write to {out}")
    sign_rows = [{"n": n, **{s.name: round(predict_sign_time(s, timings), 3) for s in SCHEMES}} for n in n_range]
    verify_rows = [
        {"n": n, **{s.name: round(predict_verify_time(s, timings, n), 3) for s in SCHEMES}} for n in n_range
    ]
    paths = {"sign": out / "sign_time.csv", "verify": out / "verify_time.csv"}
    write_csv(sign_rows, paths["sign"])
    write_csv(verify_rows, paths["verify"])
    return paths


# -- measurement ----------------------------------------------------------------

def _median_ms(fn: Callable[[int], object], iterations: int, warmup: int = 3) -> float:
    for i in range(warmup):
        fn(i)
    samples = []
    for i in range(iterations):
        t0 = time.perf_counter()
        fn(warmup + i)
        samples.append((time.perf_counter() - t0) * 1e3)
    return statistics.median(samples)


def measure_primitives(paramset: str, iterations: int = 50, seed: int = 0) -> OpTimings:
    """Median local wall-clock per scalar multiplication, map-to-point hash
    and pairing.  Raises ``KeyError`` for an unknown parameter set."""
    if iterations < 10:
        raise ValueError("iterations must be at least 10")
    g = get_params(paramset)
    rng = random.Random(seed)
    total = iterations + 3
    scalars = [rng.randrange(1, g.q) for _ in range(total)]
    points = [point_mul(k, g.P) for k in scalars]
    msgs = [rng.getrandbits(256).to_bytes(32, "big") for _ in range(total)]
    mult = _median_ms(lambda i: point_mul(scalars[i], g.P), iterations)
    hsh = _median_ms(lambda i: hash_to_point(msgs[i], g), iterations)
    pair = _median_ms(lambda i: pairing(points[i], points[-1 - i], g), iterations)
    return OpTimings(mult_ms=mult, hash_ms=hsh, pairing_ms=pair)
