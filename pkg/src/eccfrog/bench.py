"""Timing harness for scalar multiplication and ECDH across registry curves.

Emits raw order statistics only; nothing here ranks or compares curves.
"""

from __future__ import annotations

import contextlib
import csv
import os
import platform
import random
import statistics
import sys
import time
from dataclasses import dataclass
from typing import Iterable, List, Sequence

from .curve import scalar_mul
from .hippo import ecdh, keygen
from .registry import registry_get

OPERATIONS = ("scalar_mul_variable_base", "scalar_mul_fixed_base", "ecdh")
CSV_HEADER = ("curve", "operation", "iterations", "median_ns", "p10_ns", "p90_ns", "environment")


@dataclass(frozen=True)
class BenchResult:
    curve: str
    operation: str
    iterations: int
    median_ns: int
    p10_ns: int
    p90_ns: int
    environment: str

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if not self.p10_ns <= self.median_ns <= self.p90_ns:
            raise ValueError("percentiles out of order")

    def row(self) -> List[str]:
        return [
            self.curve,
            self.operation,
            str(self.iterations),
            str(self.median_ns),
            str(self.p10_ns),
            str(self.p90_ns),
            self.environment,
        ]


def host_description() -> str:
    return f"{platform.system()} {platform.release()} {platform.machine()} python-{platform.python_version()}"


def _percentiles(samples: Sequence[int]):
    if len(samples) == 1:
        v = samples[0]
        return v, v, v
    qs = statistics.quantiles(samples, n=10, method="inclusive")
    return int(qs[0]), int(statistics.median(samples)), int(qs[-1])


@contextlib.contextmanager
def _pinned():
    """Pin to one CPU where the platform allows; restore afterwards."""
    if not hasattr(os, "sched_setaffinity"):
        yield
        return
    before = os.sched_getaffinity(0)
    try:
        os.sched_setaffinity(0, {min(before)})
    except OSError:
        yield
        return
    try:
        yield
    finally:
        os.sched_setaffinity(0, before)


def bench_run(
    curves: Iterable[str], iters: int, seed: int = 0, warmup: int = 3
) -> List[BenchResult]:
    """Time each operation ``iters`` times per curve after a short warm-up.

    Scalars come from ``random.Random(seed)`` so runs can be replayed.
    """
    if iters < 10:
        raise ValueError("use at least 10 iterations")
    rng = random.Random(seed)
    env = host_description()

    def randbytes(n: int) -> bytes:
        return rng.getrandbits(8 * n).to_bytes(n, "big")

    out: List[BenchResult] = []
    with _pinned():
        for name in curves:
            out.extend(_bench_curve(name, iters, rng, randbytes, warmup, env))
    return out


def _bench_curve(
    name: str, iters: int, rng: random.Random, randbytes, warmup: int, env: str
) -> List[BenchResult]:
    out: List[BenchResult] = []
    C = registry_get(name)
    G = C.G
    base = keygen(C, randbytes).pk
    peer = keygen(C, randbytes)

    def variable_base(k):
        scalar_mul(k, base, C)

    def fixed_base(k):
        scalar_mul(k, G, C)

    def exchange(k):
        ecdh(k, peer.pk, C)

    for op, fn in zip(OPERATIONS, (variable_base, fixed_base, exchange)):
        for _ in range(warmup):
            fn(rng.randrange(1, C.n))
        samples = []
        for _ in range(iters):
            k = rng.randrange(1, C.n)
            t0 = time.perf_counter_ns()
            fn(k)
            samples.append(time.perf_counter_ns() - t0)
        p10, med, p90 = _percentiles(samples)
        out.append(BenchResult(C.name, op, iters, med, p10, p90, env))
    return out


def write_bench_csv(results: Iterable[BenchResult], path) -> None:
    if path == "-":
        _write(results, sys.stdout)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _write(results, fh)


def _write(results, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in results:
        w.writerow(r.row())
