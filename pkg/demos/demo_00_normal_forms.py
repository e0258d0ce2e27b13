"""
Normal forms and the twisting automorphism
==========================================

Every element of Gamma_d is written t^r a_1^p_1 ... a_d^p_d. This demo
multiplies a few elements, shows the binomial entries of phi^m and checks
that (a_1 t)^n carries a triangular number in its central coordinate.
"""

from filiform import GroupElement, eval_word, gen_a, gen_t, multiply, parse_word, phi_pow, power
from filiform.group import format_element

# the defining relation t^-1 a_1 t = a_1 a_2
print(format_element(eval_word(parse_word("T a1 t", 2))))

# phi^m has binomial entries; negative powers use C(-n, k)
for m in (3, -3):
    print(f"phi^{m} in dimension 4:")
    for row in phi_pow(4, m).tolist():
        print("   ", row)

# (a_1 t)^n = t^n a_1^n a_2^(n(n+1)/2)
a1t = multiply(gen_a(2, 1), gen_t(2))
for n in range(1, 7):
    print(n, format_element(power(a1t, n)))

# multiplication is exact for arbitrarily large exponents
big = GroupElement(3, 10**6, (7, -3, 10**20))
print(format_element(multiply(big, big)))
