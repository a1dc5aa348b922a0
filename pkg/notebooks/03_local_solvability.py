"""
Deciding local solvability
==========================

Every descent step asks whether some curve has a point over Q_p.  The
residue-disk search answers this exactly; congruence shortcuts are checked
against it.
"""

import numpy as np

from rank2curves.localsolve import (
    QuarticSpace,
    TernaryCubic,
    fast_mod9,
    quartic_solvable_padic,
    ternary_cubic_solvable,
)

# the quartic 2 w^2 = 4 + 564 z^4 has no 2-adic point, 141 w^2 = 141^2 + 564 z^4 has a 47-adic one
for d, B, p in [(2, 564, 2), (141, 564, 47), (-1, -141, 47)]:
    print(f"d = {d:>4}, B = {B:>4}, p = {p:>2}:", quartic_solvable_padic(QuarticSpace(d, B), p))

# diagonal cubics at 3: tabulate the mod 9 criterion over unit classes,
# using distinct primes in each class so the coefficients stay coprime
rows = {1: 19, 2: 11, 4: 13, 5: 23, 7: 43, 8: 17}
cols = {1: 37, 2: 29, 4: 31, 5: 41, 7: 61, 8: 53}
table = np.array([[fast_mod9(TernaryCubic(1, rows[r], cols[c]), 3) for c in cols] for r in rows], dtype=int)
print("X^3 + u2 Y^3 + u3 Z^3 solvable over Q_3 (rows u2, columns u3 mod 9):")
print(table)

# the same cubic through the generic search, including a bad prime
space = TernaryCubic(1, 1, 2 * 11 * 727)
print({ell: ternary_cubic_solvable(space, ell, "generic") for ell in space.bad_primes()})
