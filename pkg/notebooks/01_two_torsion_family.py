"""
Rank two curves with a 2-torsion point
======================================

Primes p = 15, q = 3 (mod 16) with p + q = 2b^2 give the curve
y^2 = x^3 - pq x together with an explicit point of infinite order.
"""

from rank2curves.curves import construct_point_T2, minimize_model, torsion_subgroup, is_nontorsion
from rank2curves.descent2 import PHI, PHI_DUAL, selmer_group
from rank2curves.family import T2_PARAMS, certify_T2, search_prime_pairs
from rank2curves.rootnum import root_number_Em

# the first few hits of the prime-pair search
hits = search_prime_pairs(T2_PARAMS.with_range(1, 30))
print("first hits (b, p, q):", hits[:5])

b, p, q = hits[0]
a = (p - q) // 2
print(f"b = {b}: a = {a}, a^2 - b^4 = {a * a - b**4} = -{p}*{q}")

# witness on the big model, then scaled down to y^2 = x^3 - pq x
big, P0 = construct_point_T2(a, b * b)
C, P, u = minimize_model(big, P0)
print(f"{big}  contains {P0}")
print(f"{C}  contains {P}  (scale {u})")
print("non-torsion:", is_nontorsion(P, C), "| torsion:", torsion_subgroup(C).name)

# the root number is +1, so the rank is even
print("root number:", root_number_Em(-p * q))

# 2-isogeny descent bounds the rank by dim Sel_phi + dim Sel_phi' - 2
sel, seld = selmer_group(-p * q, PHI), selmer_group(-p * q, PHI_DUAL)
print("Sel_phi  :", sel.members)
print("Sel_phi' :", seld.members)
print("rank <=", sel.dim + seld.dim - 2)

# everything together, as a certificate
cert = certify_T2(b, p, q)
print("rank interval", cert.rank_interval, "-> rank", cert.rank_under_parity, "assuming", cert.assumes)
