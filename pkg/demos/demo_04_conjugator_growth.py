"""
How long must conjugators be?
=============================

The pairs (a_{d-1}, a_{d-1} a_d^(n^d)) have inputs of size about n but need
a conjugator of length n^d. Random conjugate pairs stay well below that.
"""

import math
from collections import defaultdict

from filiform import cl_experiment

fam = cl_experiment(2, [2, 3, 4, 5, 6])
for r in fam:
    print(f"n={r.n}: input size {r.input_size}, shortest conjugator {r.witness_length}")
xs = [math.log(r.n) for r in fam]
ys = [math.log(r.witness_length) for r in fam]
print("slope of log length vs log n:", round((ys[-1] - ys[0]) / (xs[-1] - xs[0]), 3))

for d in (2, 3):
    worst = defaultdict(float)
    for r in cl_experiment(d, range(4, 11), mode="random-pairs", seed=0, samples=50):
        worst[r.n] = max(worst[r.n], r.ratio)
    print(f"d={d} max witness_len/n^d by n:", {n: round(x, 3) for n, x in worst.items()})
