"""
Solving the conjugacy problem
=============================

The solver conjugates the images in Gamma_{d-1}, lifts, and removes the
remaining central discrepancy. Every witness is checked before it is
returned. The brute-force search over a ball gives the true shortest one.
"""

import random

from filiform import GroupElement, conjugate, shortest_conjugator_bfs, solve_conjugacy
from filiform.conjugacy import random_word
from filiform.errors import NotConjugate
from filiform.group import eval_word, format_element

u = GroupElement(2, 0, (1, 0))
v = GroupElement(2, 0, (1, 9))
wit = solve_conjugacy(u, v)
print(wit.to_json())
print("shortest by search:", format_element(shortest_conjugator_bfs(u, v, 9)))

try:
    solve_conjugacy(GroupElement(2, 0, (0, 1)), GroupElement(2, 0, (0, 2)))
except NotConjugate as exc:
    print("not conjugate:", exc)

rng = random.Random(3)
for _ in range(3):
    u = eval_word(random_word(4, 8, rng))
    c = eval_word(random_word(4, 8, rng))
    wit = solve_conjugacy(u, conjugate(u, c))
    print(format_element(u), "->", format_element(wit.conjugator), "verified:", wit.verify())
    for stage in wit.stage_log:
        print("   ", stage)
