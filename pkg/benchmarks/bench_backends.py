#!/usr/bin/env python3
"""Compare the gmpy2 fast path against the pure-stdlib fallback.

Each workload runs in a subprocess with SPECTILE_BACKEND forced, so the
import-time backend selection is exercised exactly as users hit it.

    python benchmarks/bench_backends.py
"""

import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
from spectile import make, ft_indicator, Rat
from spectile.tiling import lattice_T
from spectile.spectrum import dual_lattice, patch, verify_orthogonality
from spectile._backend import BACKEND

out = {"backend": BACKEND}

t0 = time.perf_counter()
for _ in range(10):
    to = make("truncated-octahedron")
    lt = lattice_T(to)
out["hull_lattice_10x"] = time.perf_counter() - t0

freqs = [(Rat(a, 16), Rat(b, 16), Rat(5, 16)) for a in range(1, 11) for b in range(1, 11)]
ft_indicator(to, freqs[0])  # warm the geometry caches
t0 = time.perf_counter()
for xi in freqs:
    ft_indicator(to, xi)
out["transform_100x"] = time.perf_counter() - t0

hexagon = make("hexagon")
sp = patch(dual_lattice(lattice_T(hexagon)), 6.0)
t0 = time.perf_counter()
verify_orthogonality(hexagon, sp)
out["orthogonality_r6"] = time.perf_counter() - t0

print(json.dumps(out))
"""


def run(backend: str) -> dict:
    env = dict(os.environ, SPECTILE_BACKEND=backend)
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD], capture_output=True, text=True, env=env
    )
    if proc.returncode != 0:
        raise SystemExit(f"{backend} run failed:\n{proc.stderr}")
    return json.loads(proc.stdout)


def main():
    rows = []
    for backend in ("gmpy2", "stdlib"):
        try:
            rows.append(run(backend))
        except SystemExit as exc:
            if backend == "gmpy2":
                print(f"skipping gmpy2 ({exc})")
            else:
                raise
    keys = [k for k in rows[0] if k != "backend"]
    header = f"{'workload':<22}" + "".join(f"{r['backend']:>12}" for r in rows)
    print(header)
    print("-" * len(header))
    for k in keys:
        line = f"{k:<22}" + "".join(f"{r[k]:>11.3f}s" for r in rows)
        print(line)
    if len(rows) == 2:
        print("-" * len(header))
        for k in keys:
            print(f"{k:<22} speedup {rows[1][k] / rows[0][k]:>6.2f}x")


if __name__ == "__main__":
    main()
