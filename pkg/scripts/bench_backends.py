#!/usr/bin/env python3
"""Time the gmpy2 backend against the pure fractions fallback.

Runs the same two workloads in fresh interpreters, one per backend:
a full depth-4 search on the level-4 family polygon, and assembling the
separation polygon for a=(2,3), S=5, k=2, C=2 (whose corner coordinates
carry large denominators). Usage: python scripts/bench_backends.py
"""

import os
import subprocess
import sys

WORKLOAD = r"""
import time
import circuitwalks as cw
from circuitwalks.constructions import build_reduction

t0 = time.perf_counter()
art = cw.build_p_ell(4)
for start in (art.u, art.w):
    r = cw.shortest_monotone_walk(art.h, start, art.c0, cw.SearchConfig(4))
    assert r.walk.length == 4
    cw.shortest_monotone_walk(art.h, start, art.c0, cw.SearchConfig(3))
search = time.perf_counter() - t0

t0 = time.perf_counter()
for _ in range(5):
    red = build_reduction(cw.SubsetSumInstance(a=(2, 3), S=5, k=2), 2)
assemble = (time.perf_counter() - t0) / 5

print(f"{cw.BACKEND} search={search:.4f}s assemble={assemble:.4f}s")
"""


def run(backend: str) -> str:
    env = dict(os.environ, CIRCUITWALKS_RATIONAL_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True
    )
    if out.returncode != 0:
        return f"{backend}: failed\n{out.stderr.strip()}"
    return out.stdout.strip()


def main() -> int:
    for backend in ("gmpy2", "fractions"):
        print(run(backend))
    return 0


if __name__ == "__main__":
    sys.exit(main())
