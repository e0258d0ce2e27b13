"""
Word length, balls and short words
==================================

Exact distances come from breadth-first balls (split in two halves for
larger queries). Short words give a cheap upper bound within a constant of
the size lower bound, and the central generator a_d is badly distorted.
"""

from filiform import compute_constants, enumerate_ball, exact_distance, gen_a, short_word, size_lower_bound
from filiform.group import format_word

ball = enumerate_ball(2, 12)
print("ball sizes in Gamma_2:", ball.ball_sizes())

# the central letter a_2^(k^2) costs only about 4k letters
for k in (2, 4, 6):
    g = gen_a(2, 2, k * k)
    w = short_word(g)
    print(f"a_2^{k * k}: exact {exact_distance(g, 24)}, short word {format_word(w)!r} ({len(w)} letters)")

# sandwich: lower bound <= exact distance <= short word
worst = max(len(short_word(g)) / k for g, k in ball.elements(max_dist=8) if k)
print("largest short/exact ratio on the radius-8 ball:", round(worst, 3))
for g, k in list(ball.elements(max_dist=3))[-5:]:
    print(size_lower_bound(g), "<=", k, "<=", len(short_word(g)))

for d in (2, 3):
    print(compute_constants(d))
