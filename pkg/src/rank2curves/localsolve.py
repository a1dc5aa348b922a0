"""Local solvability of descent homogeneous spaces over R and Q_p.

Two kinds of spaces appear:

* quartics ``d*w^2 = d^2 + B*z^4`` (2-isogeny descent on y^2 = x^3 + m*x);
* diagonal ternary cubics ``u1*X^3 + u2*Y^3 + u3*Z^3 = 0`` (3-isogeny descent
  on y^2 = x^3 + m^2).

Both reduce to one question about a separable polynomial f with integer
coefficients: is there t in Z_p (or in p*Z_p) with f(t) an n-th power in Q_p
(zero allowed)?  :func:`has_power_value` answers it exactly by splitting
Z_p into residue disks until each disk is decided.  A disk ``t0 + p^k Z_p`` is
expanded as ``f(t0 + p^k s) = c0 + c1 s + c2 s^2 + ...``:

* if ``v(c0)`` is below every ``v(ci)`` by at least ``2 v_p(n) + 1``, then f
  has constant n-th power class on the disk, namely that of c0;
* if ``v(f(t0)) > 2 v(f'(t0))``, Hensel gives a root of f, hence a point;
* otherwise the disk is split into p subdisks.

When p does not divide n the split is cheaper.  With mu the least valuation
among the ci and g the reduction of the expansion divided by p^mu, every subdisk
``s = r (mod p)`` with ``g(r) != 0`` has constant class: valuation mu and unit
part g(r).  Those subdisks are settled together (by a character sum bound
when p is large) and only the roots of g mod p are searched further.

Separability guarantees termination: away from the roots ``v(c0)`` stays
bounded while ``v(ci)`` grows with k, and near a simple root Hensel fires.

The classical congruence criteria for these families are kept
as separate fast paths (``fast_*``); they return ``None`` when they do not
apply and are checked against the generic procedure in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt

from .arith import (
    EisensteinNum,
    cube_class_f4,
    factor,
    is_prime,
    is_squarefree,
    poly_roots_mod_p,
    powerfree_part,
    valuation,
)

__all__ = [
    "QuarticSpace",
    "TernaryCubic",
    "is_power_qp",
    "has_power_value",
    "quartic_solvable_real",
    "quartic_solvable_padic",
    "quartic_solvable_everywhere",
    "ternary_cubic_solvable",
    "kcubic_equation",
    "kcubic_solvable_at_2",
    "fast_mod8_two",
    "fast_mod16_pm2",
    "fast_modp_unit",
    "fast_mod9",
]

# Generous recursion cap; exceeding it means the input violated separability.
_MAX_DEPTH = 200


def _v(n: int, p: int) -> float:
    return float("inf") if n == 0 else valuation(n, p)


def is_power_qp(c: int | Fraction, n: int, p: int) -> bool:
    """True iff c is an n-th power in Q_p (0 counts as a power)."""
    if c == 0:
        return True
    c = Fraction(c)
    v = valuation(c, p)
    if v % n:
        return False
    num, den = abs(c.numerator), c.denominator
    while num % p == 0:
        num //= p
    while den % p == 0:
        den //= p
    if c < 0:
        num = -num
    vn = valuation(n, p) if n % p == 0 else 0
    if vn == 0:
        g = gcd(n, p - 1)
        return pow(num * den ** (p - 2) % p, (p - 1) // g, p) == 1
    modulus = p ** (2 * vn + 1)
    u = num * pow(den, -1, modulus) % modulus
    return any(pow(x, n, modulus) == u for x in range(1, modulus) if x % p)


def _taylor(coeffs: list[int], t0: int, h: int) -> list[int]:
    """Coefficients of f(t0 + h*s) in s; coeffs[i] multiplies t^i."""
    deg = len(coeffs) - 1
    out = []
    hp = 1
    for i in range(deg + 1):
        ci = sum(comb(j, i) * coeffs[j] * t0 ** (j - i) for j in range(i, deg + 1))
        out.append(ci * hp)
        hp *= h
    return out


def _eval(coeffs: list[int], t: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _deriv(coeffs: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:]


def _is_scaled_power(g: list[int], k: int, p: int) -> bool:
    """Is g = c * h^k in F_p[t]?  Needs p > deg g.  Uses the series k-th root."""
    deg = len(g) - 1
    if deg % k:
        return False
    inv = pow(g[-1], -1, p)
    a = [c * inv % p for c in reversed(g)]  # a[0] = 1
    alpha = pow(k, -1, p)
    top = deg // k
    b = [1]
    for m in range(1, top + 1):
        acc = sum((alpha * i - (m - i)) * a[i] * b[m - i] for i in range(1, m + 1))
        b.append(acc * pow(m, -1, p) % p)
    power = [1]
    for _ in range(k):
        nxt = [0] * (len(power) + top)
        for i, x in enumerate(power):
            for j, y in enumerate(b):
                nxt[i + j] = (nxt[i + j] + x * y) % p
        power = nxt
    return power == a


def _nonroot_power_exists(g: list[int], n: int, p: int) -> bool:
    """Is g(r) a nonzero n-th power residue for some r in F_p (p not dividing n)?"""
    while len(g) > 1 and g[-1] == 0:
        g = g[:-1]
    k = gcd(n, p - 1)
    deg = len(g) - 1
    # deg bounds the number D of distinct roots; the count of good residues
    # is at least (p - D - (k-1)(D-1)sqrt(p))/k when g is not c*h^k
    weil_ok = k in (1, 2, 3) and p > deg and p - deg > (k - 1) * max(deg - 1, 0) * (isqrt(p) + 1)
    if not weil_ok:
        e = (p - 1) // k
        for r in range(p):
            x = _eval(g, r) % p
            if x and pow(x, e, p) == 1:
                return True
        return False
    if k == 1:
        return True
    if _is_scaled_power(g, k, p):
        return pow(g[-1], (p - 1) // k, p) == 1
    return True


def has_power_value(coeffs: list[int], n: int, p: int, start: int = 0) -> bool:
    """Is there t in p^start * Z_p with f(t) an n-th power in Q_p?

    ``coeffs`` are the integer coefficients of f, constant term first; f must
    be nonzero and have no repeated roots. ``start`` is 0 for all of Z_p and 1
    for the disk p*Z_p.
    """
    if not any(coeffs):
        raise ValueError("zero polynomial")
    tame = n % p != 0
    margin = 1 if tame else 2 * valuation(n, p) + 1
    dcoeffs = _deriv(coeffs)
    stack = [(0, start)]
    while stack:
        t0, k = stack.pop()
        if k > _MAX_DEPTH:
            raise RuntimeError("p-adic search did not terminate; is f separable?")
        f0 = _eval(coeffs, t0)
        if f0 == 0:
            return True
        v0 = valuation(f0, p)
        d0 = _eval(dcoeffs, t0)
        if d0 != 0 and v0 > 2 * valuation(d0, p):
            return True  # Hensel: a root of f in Z_p
        step = p**k
        expansion = _taylor(coeffs, t0, step)
        vmin = min((_v(c, p) for c in expansion[1:]), default=float("inf"))
        if vmin - v0 >= margin:
            if is_power_qp(f0, n, p):
                return True
            continue
        if not tame:
            stack.extend((t0 + r * step, k + 1) for r in range(p - 1, -1, -1))
            continue
        mu = min(v0, vmin)
        pm = p**mu
        g = [(c // pm) % p for c in expansion]
        if mu % n == 0 and _nonroot_power_exists(g, n, p):
            return True
        stack.extend((t0 + r * step, k + 1) for r in reversed(poly_roots_mod_p(g, p)))
    return False


# ---------------------------------------------------------------------------
# quartic spaces d*w^2 = d^2 + B*z^4


@dataclass(frozen=True)
class QuarticSpace:
    """The curve d*w^2 = d^2 + B*z^4 (d square-free, B nonzero)."""

    d: int
    B: int

    def __post_init__(self):
        if self.B == 0:
            raise ValueError("B must be nonzero")
        if self.d == 0 or not is_squarefree(self.d):
            raise ValueError(f"d = {self.d} is not a nonzero square-free integer")

    def has_point(self, w, z) -> bool:
        return self.d * w * w == self.d**2 + self.B * z**4

    def patches(self) -> tuple[list[int], list[int]]:
        """Integral quartics whose square values give the two affine patches.

        Multiplying by d: (d*w)^2 = d^3 + d*B*z^4; the patch at infinity uses
        u = 1/z: (d*w*u^2)^2 = d^3*u^4 + d*B.
        """
        d, B = self.d, self.B
        return [d**3, 0, 0, 0, d * B], [d * B, 0, 0, 0, d**3]


def quartic_solvable_real(space: QuarticSpace) -> bool:
    # w^2 = d + (B/d) z^4 is positive somewhere iff d > 0 or B/d > 0
    return space.d > 0 or space.B * space.d > 0


def quartic_solvable_padic(space: QuarticSpace, p: int, method: str = "generic") -> bool:
    """Decide whether the quartic space has a Q_p-point.

    ``method="generic"`` always runs the disk search; ``"auto"`` tries the
    congruence fast paths first and falls back to the search.
    """
    if method not in ("generic", "auto"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        for fast in (fast_mod8_two, fast_mod16_pm2, fast_modp_unit):
            ans = fast(space, p)
            if ans is not None:
                return ans
    affine, at_infinity = space.patches()
    return has_power_value(affine, 2, p) or has_power_value(at_infinity, 2, p, start=1)


def quartic_solvable_everywhere(space: QuarticSpace, primes) -> bool:
    return quartic_solvable_real(space) and all(
        quartic_solvable_padic(space, p) for p in primes
    )


def fast_mod8_two(space: QuarticSpace, p: int) -> bool | None:
    """d = 2, B = 4N with N odd: no Q_2-point when N != +-1 (mod 8).

    Dividing by 2 gives w^2 = 2 + 2N z^4, impossible mod 8 for such N.
    """
    if p != 2 or space.d != 2 or space.B % 4 or (space.B // 4) % 2 == 0:
        return None
    if (space.B // 4) % 8 in (1, 7):
        return None
    return False


def fast_mod16_pm2(space: QuarticSpace, p: int) -> bool | None:
    """d = +-2 with B odd never has a Q_2-point (2W^2 +- 4 != 0 mod 16)."""
    if p != 2 or space.d not in (2, -2) or space.B % 2 == 0:
        return None
    return False


def fast_modp_unit(space: QuarticSpace, p: int) -> bool | None:
    """Odd p with p exactly dividing B and p not dividing d.

    Then a Q_p-point exists iff d is a square mod p. For d = -1 this is the
    classical W^2 + 1 = 0 (mod p) obstruction at p = 3 (mod 4).
    """
    if p == 2 or space.d % p == 0 or valuation(space.B, p) != 1:
        return None
    return pow(space.d % p, (p - 1) // 2, p) == 1


# ---------------------------------------------------------------------------
# diagonal cubics u1 X^3 + u2 Y^3 + u3 Z^3 = 0


@dataclass(frozen=True)
class TernaryCubic:
    """u1*X^3 + u2*Y^3 + u3*Z^3 = 0 with nonzero, cube-free, pairwise coprime u_i."""

    u1: int
    u2: int
    u3: int

    def __post_init__(self):
        us = (self.u1, self.u2, self.u3)
        if any(u == 0 or powerfree_part(u, 3)[1] != 1 for u in us):
            raise ValueError(f"coefficients {us} must be nonzero and cube-free")
        if gcd(self.u1, self.u2) != 1 or gcd(self.u1, self.u3) != 1 or gcd(self.u2, self.u3) != 1:
            raise ValueError(f"coefficients {us} must be pairwise coprime")

    @property
    def coeffs(self) -> tuple[int, int, int]:
        return (self.u1, self.u2, self.u3)

    def evaluate(self, X, Y, Z):
        return self.u1 * X**3 + self.u2 * Y**3 + self.u3 * Z**3

    def bad_primes(self) -> list[int]:
        return sorted({3} | set(factor(self.u1 * self.u2 * self.u3)))


def fast_mod9(space: TernaryCubic, p: int) -> bool | None:
    """At p = 3 with all u_i prime to 3: solvable iff u_i = +-u_j (mod 9), i != j."""
    if p != 3 or any(u % 3 == 0 for u in space.coeffs):
        return None
    u = [x % 9 for x in space.coeffs]
    return any(u[i] in (u[j], -u[j] % 9) for i in range(3) for j in range(i + 1, 3))


def _cubic_generic(space: TernaryCubic, p: int) -> bool:
    # Every nontrivial point has (X:Y) in P^1(Q_p); Z^3 = -(u1 X^3 + u2 Y^3)/u3.
    # Scale by u3^3 so the target is integral: (u3 Z)^3 = -u3^2 (u1 t^3 + u2).
    u1, u2, u3 = space.coeffs
    s = -(u3 * u3)
    chart_y = [s * u2, 0, 0, s * u1]  # Y = 1, X = t in Z_p
    chart_x = [s * u1, 0, 0, s * u2]  # X = 1, Y = t in p Z_p
    return has_power_value(chart_y, 3, p) or has_power_value(chart_x, 3, p, start=1)


def ternary_cubic_solvable(space: TernaryCubic, p: int, method: str = "auto") -> bool:
    """Does u1 X^3 + u2 Y^3 + u3 Z^3 = 0 have a nontrivial Q_p-point?"""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if method not in ("generic", "auto"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        if p != 3 and all(u % p for u in space.coeffs):
            return True  # smooth plane cubic over F_p has a point, lifts by Hensel
        ans = fast_mod9(space, p)
        if ans is not None:
            return ans
    return _cubic_generic(space, p)


# ---------------------------------------------------------------------------
# the twisted cubic over K used for the dual 3-descent


def kcubic_equation(v: EisensteinNum, pq: int):
    """Coefficients of 2v2 X^3 - 6v1 Y^3 + (6pq/Nm v) Z^3 + 6v1 X^2Y - 18v2 XY^2.

    Returned as a dict keyed by monomial exponent tuples (i, j, k).
    """
    v1, v2 = v.v1, v.v2
    return {
        (3, 0, 0): 2 * v2,
        (0, 3, 0): -6 * v1,
        (0, 0, 3): Fraction(6 * pq) / v.norm(),
        (2, 1, 0): 6 * v1,
        (1, 2, 0): -18 * v2,
    }


def kcubic_solvable_at_2(v: EisensteinNum) -> bool:
    """Q_2-solvability of the dual 3-descent space attached to d = v^2 tau(v).

    Solvable iff tau(v)/v is a cube in the residue field F_4 at 2.
    """
    return cube_class_f4(v) == 0
