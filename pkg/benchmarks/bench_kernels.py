#!/usr/bin/env python3
"""Micro-benchmarks for the kernel backends.

Times the four kernels plus an end-to-end stratum labeling loop on every
available backend (pure Python and the compiled extension, when built) and
prints per-operation timings with the speedup of compiled over pure.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from cechstrat import _kernels


def _workloads(seed: int = 1234):
    rng = random.Random(seed)
    meb_inputs = [
        [tuple(rng.uniform(0, 1) for _ in range(2)) for _ in range(rng.randint(3, 8))]
        for _ in range(400)
    ]
    scan_inputs = [
        [tuple(rng.uniform(0, 1) for _ in range(2)) for _ in range(5)]
        for _ in range(100)
    ]

    def down_close(fam):
        changed = True
        while changed:
            changed = False
            for m in list(fam):
                mm = m
                while mm:
                    low = mm & -mm
                    face = m ^ low
                    if face and face not in fam:
                        fam.add(face)
                        changed = True
                    mm ^= low
        return fam

    canon_inputs = []
    for _ in range(150):
        n = rng.randint(4, 5)
        fam = {1 << v for v in range(n)}
        for m in range(1, 1 << n):
            if m.bit_count() >= 2 and rng.random() < 0.45:
                fam.add(m)
        canon_inputs.append((n, sorted(down_close(fam))))
    surj_inputs = []
    for _ in range(150):
        (n1, s1), (n2, s2) = rng.sample(canon_inputs, 2)
        surj_inputs.append((n1, n2, s1, s2))
    return meb_inputs, scan_inputs, canon_inputs, surj_inputs


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run(repeat: int):
    meb_in, scan_in, canon_in, surj_in = _workloads()

    def bench(backend):
        hot_label = None
        try:
            from cechstrat import PointConfig, RanPoint
            from cechstrat import strat

            cfgs = [PointConfig(2, tuple(pts)) for pts in scan_in[:40]]

            def label_loop():
                for cfg in cfgs:
                    strat.stratum_label(RanPoint(cfg, 0.4))

            hot_label = label_loop
        except Exception:
            pass
        rows = {
            "meb (400 calls)": lambda: [backend.meb(p) for p in meb_in],
            "subset scan (100 x 26)": lambda: [
                backend.subset_meb_radii(p, len(p)) for p in scan_in
            ],
            "canonical form (150)": lambda: [
                backend.canonical_masks(n, m) for n, m in canon_in
            ],
            "surjection search (150)": lambda: [
                backend.surjection_witness(a, b, s, t) for a, b, s, t in surj_in
            ],
        }
        out = {name: _time(fn, repeat) for name, fn in rows.items()}
        if hot_label is not None and backend is _kernels.backends[_kernels.BACKEND]:
            out["stratum labels (40, end-to-end)"] = _time(hot_label, repeat)
        return out

    results = {name: bench(mod) for name, mod in sorted(_kernels.backends.items())}

    names = []
    for rows in results.values():
        for name in rows:
            if name not in names:
                names.append(name)
    width = max(len(n) for n in names)
    header = f"{'operation':<{width}}"
    for backend in results:
        header += f"  {backend:>12}"
    if {"pure", "compiled"} <= results.keys():
        header += f"  {'speedup':>9}"
    print(f"active backend: {_kernels.BACKEND}")
    print(header)
    print("-" * len(header))
    for name in names:
        line = f"{name:<{width}}"
        for backend in results:
            t = results[backend].get(name)
            line += f"  {t * 1e3:>10.2f}ms" if t is not None else f"  {'-':>12}"
        if {"pure", "compiled"} <= results.keys():
            tp = results["pure"].get(name)
            tc = results["compiled"].get(name)
            line += f"  {tp / tc:>8.1f}x" if tp and tc else f"  {'-':>9}"
        print(line)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    run(parser.parse_args().repeat)
