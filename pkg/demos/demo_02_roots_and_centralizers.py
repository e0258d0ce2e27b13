"""
Roots, centralizers and the zeta homomorphism
=============================================

Roots in Gamma_d are unique when they exist. Elements outside the lattice
subgroup factor as g_0^p times a central power, and their centralizer is the
rank-two group generated by g_0 and a_d.
"""

from filiform import GroupElement, bezout_bounded, centralizer, max_root_mod_center, power, root_exact, zeta_image
from filiform.errors import NoRoot
from filiform.group import format_element

g = GroupElement(2, 2, (2, 1))
print("square root of", format_element(g), "is", format_element(root_exact(g, 2)))

try:
    root_exact(GroupElement(2, 2, (2, 2)), 2)
except NoRoot as exc:
    print("no root:", exc)

# odd roots of t^n a_1^n pick up a half-integer central shift
for n in (3, 5, 7):
    print(n, format_element(root_exact(GroupElement(2, n, (n, 0)), n)))

h = GroupElement(3, 1, (2, -1, 4))
g = power(h, 6)
rd = max_root_mod_center(g)
print("maximal root:", format_element(rd.base), "exponent", rd.exponent, "offset", rd.central_offset)
print("centralizer:", centralizer(g))

zd = zeta_image(GroupElement(2, 4, (2, 1)))
print(f"zeta image generated by q*e = {zd.q}*{zd.e} = {zd.image_generator}")

print("bounded Bezout for (3, 7):", bezout_bounded(3, 7))
