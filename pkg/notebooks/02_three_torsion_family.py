"""
Rank two curves with a 3-torsion point
======================================

Primes p = 2, q = 7 (mod 9) with 27p + q = 2a^3 give y^2 = x^3 + (pq)^2.
The 3-isogeny descent runs over Q for alpha and over Q(sqrt(-3)) for alpha'.
"""

from rank2curves.curves import construct_point_T3, minimize_model, torsion_subgroup
from rank2curves.descent3 import (
    alpha_eval,
    alpha_prime_candidates,
    alpha_prime_upper,
    alpha_upper,
    congruence_exclusions,
    rank_interval_3,
)
from rank2curves.family import T3_PARAMS, search_prime_pairs
from rank2curves.rootnum import local_root_numbers_Am, root_number_Am

hits = search_prime_pairs(T3_PARAMS.with_range(1, 40))
print("first hits (a, p, q):", hits[:4])
a, p, q = hits[0]
b = (27 * p - q) // 2
m = p * q

big, P0 = construct_point_T3(a**3, b)
C, P, u = minimize_model(big, P0)
print(f"witness on A_{m}: {P}  (scale {u})")
print("torsion:", torsion_subgroup(C).name)
print("local root numbers:", local_root_numbers_Am(m), "-> global", root_number_Am(m))

# four families of cubics decide which classes can lie in im(alpha)
bound = alpha_upper(p, q, points=[P])
for label, ok in bound.family_solvable:
    print(f"  family {label:>5}: {'locally solvable' if ok else 'obstructed'}")
print("excluded by the mod 9 test alone:", sorted(congruence_exclusions(p, q)))
print("|im alpha| <=", bound.upper_order, "; alpha(P) =", alpha_eval(P, m))

# alpha' candidates: zeta^i (q'^2 tau q')^j, filtered at the prime above 2
for ij, v, ok in alpha_prime_candidates(p, q):
    print(f"  {ij}: v = {v}  {'passes' if ok else 'fails'}")
print("|im alpha'| <=", alpha_prime_upper(p, q))
print("rank interval:", rank_interval_3(p, q, True, bound))
