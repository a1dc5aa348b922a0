"""Independent reference procedures shared by the test modules."""

from itertools import product

from rank2curves.arith import is_prime, valuation
from rank2curves.localsolve import _deriv, _eval, _taylor, _v, is_power_qp


def reference_has_power_value(coeffs, n, p, start=0):
    """Plain disk search: always split into all p subdisks."""
    margin = 2 * (valuation(n, p) if n % p == 0 else 0) + 1
    dcoeffs = _deriv(coeffs)
    stack = [(0, start)]
    while stack:
        t0, k = stack.pop()
        f0 = _eval(coeffs, t0)
        if f0 == 0:
            return True
        v0 = valuation(f0, p)
        d0 = _eval(dcoeffs, t0)
        if d0 and v0 > 2 * valuation(d0, p):
            return True
        tail = _taylor(coeffs, t0, p**k)[1:]
        if min((_v(c, p) for c in tail), default=float("inf")) - v0 >= margin:
            if is_power_qp(f0, n, p):
                return True
            continue
        stack.extend((t0 + r * p**k, k + 1) for r in range(p))
    return False


UNITS_MOD_9 = (1, 2, 4, 5, 7, 8)


def _primes_in_class(c, count=3):
    out, n = [], c if c > 1 else c + 9
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 9
    return out


# class mod 9 -> distinct primes, one per position, so triples stay coprime
CLASS_PRIMES = {c: _primes_in_class(c) for c in UNITS_MOD_9}


def lift_triple(triple):
    return tuple(CLASS_PRIMES[c][i] for i, c in enumerate(triple))


def brute_force_cubic_q3(u, k=5):
    """Primitive solution of u1 X^3 + u2 Y^3 + u3 Z^3 = 0 mod 3^k (k >= 3).

    With u_i units at 3 a primitive solution has a unit coordinate X_i, where
    v(dF/dX_i) = 1; k >= 3 > 2 makes Hensel lift it to Q_3.
    """
    mod = 3**k
    cubes = {}
    for x in range(mod):
        c = pow(x, 3, mod)
        cubes[c] = cubes.get(c, False) or x % 3 != 0  # residue -> reachable by a unit
    u1, u2, u3 = (x % mod for x in u)
    inv3 = pow(u3, -1, mod)
    for (a, ua), (b, ub) in product(cubes.items(), repeat=2):
        c = (-(u1 * a + u2 * b) * inv3) % mod
        if c in cubes and (ua or ub or cubes[c]):
            return True
    return False
