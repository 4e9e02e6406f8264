"""Exit criteria for the package, one test per criterion.

Each test prints a single ``ACCEPTANCE <k> PASS|FAIL`` line (visible with
``pytest -s`` or in the captured output of a failure) before asserting.
Run just this module with ``pytest tests/test_acceptance.py -s``.
"""

import time
import tracemalloc
from contextlib import contextmanager

import pytest

from csadim import (
    build_table,
    csa_dims_bruteforce,
    density,
    gap,
    greedy_decomposition,
    sweep_gap,
    verify_corollary,
    verify_greedy_bound,
    verify_theorem_main,
)
from csadim.analysis import corollary_upper, density_bound_holds
from csadim.cache import dumps, load_table, loads, save_table
from csadim.errors import ChecksumError
from csadim.width import greedy_bound_holds

from oracles import union_dims

MB = 1 << 20


@pytest.fixture
def report(capsys):
    def emit(k, name, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {k:>2} {'PASS' if ok else 'FAIL'}  {name}  {detail}")
        assert ok, f"criterion {k} ({name}) failed: {detail}"

    return emit


@contextmanager
def measured():
    """Wall time and peak traced allocation of the enclosed block."""
    stats = {}
    tracemalloc.start()
    t0 = time.perf_counter()
    try:
        yield stats
    finally:
        stats["seconds"] = time.perf_counter() - t0
        stats["peak_mb"] = tracemalloc.get_traced_memory()[1] / MB
        tracemalloc.stop()


def test_01_oracle_equivalence(report):
    with measured() as m:
        table = build_table(28)
        bad = [n for n in range(29) if table.csa[n].bits != csa_dims_bruteforce(n).bits]
    ok = not bad and m["seconds"] < 10
    report(1, "DP == brute force for n <= 28", ok,
           f"mismatches={bad} time={m['seconds']:.2f}s (<10s)")


def test_02_greedy_reference_values(report):
    g40, g640 = greedy_decomposition(40), greedy_decomposition(640)
    ok = (g40.terms == (6, 3, 2, 2) and g40.width == 13
          and g640.terms == (25, 6, 3, 2, 2) and g640.width == 38)
    report(2, "greedy decompositions of 40 and 640", ok, f"{g40}; {g640}")


def test_03_greedy_bound_base_case(report):
    t0 = time.perf_counter()
    viols = verify_greedy_bound(3042)
    broken = [x for x in range(0, 6085, 2) if not greedy_bound_holds(x)]
    secs = time.perf_counter() - t0
    last = viols[-1].two_m if viols else None
    ok = last == 640 and not broken and secs < 5
    report(3, "greedy bound base case 2m <= 6084", ok,
           f"last violation={last} max-form failures={len(broken)} time={secs:.2f}s (<5s)")


def test_04_theorem_main(report):
    with measured() as m:
        table = build_table(400)
        fails = {n: r.failures for n in range(225, 401)
                 if (r := verify_theorem_main(n, table)).failures}
    ok = not fails and m["seconds"] < 60 and m["peak_mb"] < 100
    report(4, "theorem for 225 <= n <= 400", ok,
           f"failing n={sorted(fails)} time={m['seconds']:.2f}s (<60s) "
           f"peak={m['peak_mb']:.1f}MB (<100MB)")


def test_05_corollary(report):
    table = build_table(300)
    fails = [n for n in range(49, 301) if not verify_corollary(n, table).ok]
    report(5, "corollary for 49 <= n <= 300", not fails, f"failing n={fails}")


def test_06_parity(report):
    table = build_table(600)
    bad = []
    for n in range(601):
        bits = table.csa[n].bits
        odd_offsets = ((4 ** ((n * n + 2) // 2) - 1) // 3) << (n + 1)
        if bits & odd_offsets or bits & ((1 << n) - 1):
            bad.append(n)
    report(6, "every l in C(n) has l = n mod 2, n <= 600", not bad, f"violations={bad}")


def test_07_gap_sanity(report):
    d4 = union_dims(4)
    hand_gap4 = min(i for i in range(20) if i not in d4)
    table = build_table(600)
    gaps = {n: gap(n, table).gap for n in range(1, 601)}
    small = [n for n, g in gaps.items() if g <= n]
    below = [n for n in range(49, 601) if gaps[n] <= corollary_upper(n)]
    ok = hand_gap4 == 7 and gaps[4] == 7 and not small and not below
    report(7, "gap(4)=7, gap(n)>n, gap above corollary interval", ok,
           f"oracle gap(4)={hand_gap4} table gap(4)={gaps[4]} "
           f"gap<=n at {small} gap<=corollary at {below}")


def test_08_qualitative_sweep(report):
    with measured() as m:
        table = build_table(600)
        _, s = sweep_gap(100, 600, table)
    ok = (s.frac_13_4_positive > 0.5 and s.frac_7_2_negative > 0.5
          and m["seconds"] < 300 and m["peak_mb"] < 250)
    report(8, "sweep 100..600 (mostly positive / mostly negative)", ok,
           f"frac(13/4 curve > 0)={s.frac_13_4_positive:.3f} "
           f"frac(7/2 curve < 0)={s.frac_7_2_negative:.3f} "
           f"normalized in [{s.min_normalized:.4f}, {s.max_normalized:.4f}] "
           f"time={m['seconds']:.2f}s (<300s) peak={m['peak_mb']:.1f}MB (<250MB)")


def test_09_density(report):
    table = build_table(600)
    d600 = density(600, table)
    below = [n for n in range(49, 601) if not density_bound_holds(n, table)]
    report(9, "density(600) >= 0.8 and above corollary bound", d600 >= 0.8 and not below,
           f"density(600)={d600:.4f} below-bound n={below}")


def test_10_cache_roundtrip(report, tmp_path):
    table = build_table(200)
    path = tmp_path / "t200.csad"
    save_table(table, path)
    back = load_table(path)
    same = back.n_max == 200 and all(
        a.bits == b.bits for a, b in zip(back.csa, table.csa))
    data = bytearray(path.read_bytes())
    data[len(data) // 2] ^= 1
    rejected = []
    for corrupt in (bytes(data), dumps(table)[:-100]):
        try:
            loads(corrupt)
        except ChecksumError:
            rejected.append(True)
    ok = same and len(rejected) == 2
    report(10, "cache round-trip n_max=200, corruption rejected", ok,
           f"identical={same} corrupted files rejected={len(rejected)}/2")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))
