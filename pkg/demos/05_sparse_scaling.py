"""Encoding cost on sparse graphs grows with the edge count.

Average degree is held near 20 while n doubles, so time should roughly
double too.
"""
import time

import numpy as np

from graphencoder import SbmSpec, encode_sparse, gen_sparse_sbm

prev = None
for n in (25_000, 50_000, 100_000, 200_000):
    spec = SbmSpec(B=np.where(np.eye(3, dtype=bool), 30.0 / n, 15.0 / n))
    g, y = gen_sparse_sbm(n, spec, seed=0)
    times = []
    for _ in range(7):
        t0 = time.perf_counter()
        encode_sparse(g, y)
        times.append(time.perf_counter() - t0)
    best = min(times)
    note = "" if prev is None else f"  x{best / prev:.2f}"
    print(f"n={n:7d}  edges={g.nnz:8d}  {best * 1e3:6.1f} ms{note}")
    prev = best
