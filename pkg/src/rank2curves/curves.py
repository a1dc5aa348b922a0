"""Short Weierstrass curves y^2 = x^3 + a x + b over Q, exact throughout.

Family models:

====== ==================== =========================
tag    equation             role
====== ==================== =========================
Em     y^2 = x^3 + m x      j = 1728, 2-torsion (0,0)
EmDual y^2 = x^3 - 4m x     target of the 2-isogeny
Am     y^2 = x^3 + m^2      j = 0, 3-torsion (0, +-m)
AmDual y^2 = x^3 - 27 m^2   target of the 3-isogeny
====== ==================== =========================
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import divisors, factor, powerfree_part

__all__ = [
    "Curve",
    "Point",
    "O",
    "TorsionGroup",
    "KernelPointError",
    "add_points",
    "neg_point",
    "mul_point",
    "is_nontorsion",
    "torsion_subgroup",
    "torsion_closed_form",
    "apply_isogeny",
    "construct_point_T2",
    "construct_point_T3",
    "minimize_model",
]

FAMILIES = ("Em", "Am", "EmDual", "AmDual", "generic")


class KernelPointError(ValueError):
    """The point lies in the kernel of the isogeny."""


@dataclass(frozen=True)
class Point:
    """Affine point (x, y), or the point at infinity when x is None."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @classmethod
    def affine(cls, x, y) -> Point:
        return cls(Fraction(x), Fraction(y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


O = Point()


@dataclass(frozen=True)
class Curve:
    a: Fraction
    b: Fraction
    family: str = "generic"
    m: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if 4 * self.a**3 + 27 * self.b**2 == 0:
            raise ValueError(f"singular curve y^2 = x^3 + {self.a}x + {self.b}")
        if self.family != "generic":
            expected = {
                "Em": (self.m, 0),
                "EmDual": (-4 * self.m, 0),
                "Am": (0, self.m**2),
                "AmDual": (0, -27 * self.m**2),
            }[self.family]
            if (self.a, self.b) != expected:
                raise ValueError(f"coefficients do not match family {self.family}({self.m})")

    @classmethod
    def Em(cls, m: int) -> Curve:
        return cls(m, 0, "Em", m)

    @classmethod
    def EmDual(cls, m: int) -> Curve:
        return cls(-4 * m, 0, "EmDual", m)

    @classmethod
    def Am(cls, m: int) -> Curve:
        return cls(0, m * m, "Am", m)

    @classmethod
    def AmDual(cls, m: int) -> Curve:
        return cls(0, -27 * m * m, "AmDual", m)

    @property
    def discriminant(self) -> Fraction:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def contains(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        return P.y * P.y == P.x**3 + self.a * P.x + self.b

    def check(self, P: Point) -> None:
        if not self.contains(P):
            raise ValueError(f"{P} is not on {self}")

    def __str__(self):
        rhs = "x^3"
        for coeff, mono in ((self.a, "x"), (self.b, "")):
            if coeff:
                rhs += f" {'-' if coeff < 0 else '+'} {abs(coeff)}{mono}"
        eq = f"y^2 = {rhs}"
        return f"{self.family}({self.m}): {eq}" if self.family != "generic" else eq


def neg_point(P: Point) -> Point:
    return P if P.is_infinity else Point(P.x, -P.y)


def _add(P: Point, Q: Point, a: Fraction) -> Point:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y != Q.y or P.y == 0:
            return O
        lam = (3 * P.x * P.x + a) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    return Point(x3, lam * (P.x - x3) - P.y)


def add_points(P: Point, Q: Point, C: Curve) -> Point:
    """Chord-tangent sum on C."""
    C.check(P)
    C.check(Q)
    return _add(P, Q, C.a)


def mul_point(k: int, P: Point, C: Curve) -> Point:
    C.check(P)
    if k < 0:
        k, P = -k, neg_point(P)
    R, base = O, P
    while k:
        if k & 1:
            R = _add(R, base, C.a)
        base = _add(base, base, C.a)
        k >>= 1
    return R


def _multiples(P: Point, C: Curve, upto: int):
    R = P
    for k in range(1, upto + 1):
        yield k, R
        R = _add(R, P, C.a)


def is_nontorsion(P: Point, C: Curve) -> bool:
    """A rational torsion point has order <= 12 (Mazur)."""
    C.check(P)
    if P.is_infinity:
        raise ValueError("P must not be the point at infinity")
    return all(not R.is_infinity for k, R in _multiples(P, C, 12) if k >= 2)


def _order(P: Point, C: Curve) -> Optional[int]:
    if P.is_infinity:
        return 1
    for k, R in _multiples(P, C, 13):
        if k >= 2 and R.is_infinity:
            return k
    return None


@dataclass(frozen=True)
class TorsionGroup:
    """Rational torsion as invariant factors, with generators and all points."""

    invariants: tuple[int, ...]
    generators: tuple[Point, ...]
    points: frozenset

    @property
    def order(self) -> int:
        return math.prod(self.invariants)

    @property
    def name(self) -> str:
        if not self.invariants:
            return "trivial"
        return " x ".join(f"Z/{n}" for n in self.invariants)


def _integral_scale(C: Curve) -> int:
    """Smallest u >= 1 with u^4 a and u^6 b integral."""
    u = 1
    for den, k in ((C.a.denominator, 4), (C.b.denominator, 6)):
        for p, e in (factor(den).items() if den > 1 else ()):
            need = -(-e // k)
            while u % p**need:
                u *= p
    return u


def _integer_roots_cubic(a: int, c: int) -> list[int]:
    """Integer roots of x^3 + a x + c, by exact bisection on monotone runs."""

    def f(x):
        return x * x * x + a * x + c

    bound = 1 + max(abs(a), abs(c))
    if a < 0:
        F = math.isqrt(-a // 3)  # floor of the positive critical point
        runs = [(-bound, -F - 1), (-F, F), (F + 1, bound)]
    else:
        runs = [(-bound, bound)]
    roots = []
    for lo, hi in runs:
        if lo > hi:
            continue
        flo, fhi = f(lo), f(hi)
        if (flo > 0 and fhi > 0) or (flo < 0 and fhi < 0):
            continue
        increasing = flo <= fhi
        while lo < hi:
            mid = (lo + hi) // 2
            fm = f(mid)
            if (fm < 0) if increasing else (fm > 0):
                lo = mid + 1
            else:
                hi = mid
        if f(lo) == 0:
            roots.append(lo)
    return sorted(set(roots))


def _lutz_nagell_points(a: int, b: int) -> list[Point]:
    disc = 4 * a**3 + 27 * b**2
    ys = [0] + [y for y in divisors(disc) if disc % (y * y) == 0]
    pts = []
    for y in ys:
        for x in _integer_roots_cubic(a, b - y * y):
            pts.append(Point.affine(x, y))
            if y:
                pts.append(Point.affine(x, -y))
    return pts


def torsion_subgroup(C: Curve) -> TorsionGroup:
    """Rational torsion subgroup via Lutz-Nagell on an integral model."""
    u = _integral_scale(C)
    a, b = C.a * u**4, C.b * u**6
    model = Curve(a, b)
    torsion = [O]
    for P in _lutz_nagell_points(int(a), int(b)):
        if _order(P, model) is not None:
            torsion.append(P)
    back = [O if P.is_infinity else Point(P.x / u**2, P.y / u**3) for P in torsion]
    return _group_structure(back, C)


def _group_structure(points: list[Point], C: Curve) -> TorsionGroup:
    n = len(points)
    orders = {P: _order(P, C) for P in points}
    two_torsion = [P for P in points if orders[P] == 2]
    key = lambda P: (orders[P], P.x, -P.y)  # noqa: E731
    if len(two_torsion) == 3:
        big = max((P for P in points if not P.is_infinity), key=lambda P: (orders[P], -abs(P.x), P.y))
        span = {P for _, P in _multiples(big, C, orders[big])}
        second = min((P for P in two_torsion if P not in span), key=key)
        return TorsionGroup((2, n // 2), (second, big), frozenset(points))
    if n == 1:
        return TorsionGroup((), (), frozenset(points))
    gens = sorted((P for P in points if orders[P] == n), key=key)
    return TorsionGroup((n,), (gens[0],), frozenset(points))


def torsion_closed_form(C: Curve) -> Optional[tuple[int, ...]]:
    """Known torsion for the two families, or None outside their hypotheses.

    Em(m), m 4th-power-free: Z/4 for m = 4, Z/2 x Z/2 for -m a square,
    Z/2 otherwise. Am(m), m cube-free: Z/6 for m = +-1, Z/3 otherwise.
    """
    m = C.m
    if C.family == "Em":
        if powerfree_part(m, 4)[1] != 1:
            return None
        if m == 4:
            return (4,)
        if m < 0 and math.isqrt(-m) ** 2 == -m:
            return (2, 2)
        return (2,)
    if C.family == "Am":
        if powerfree_part(m, 3)[1] != 1:
            return None
        return (6,) if abs(m) == 1 else (3,)
    return None


def apply_isogeny(P: Point, C: Curve) -> tuple[Curve, Point]:
    """Image of P under the 2-isogeny (Em) or 3-isogeny (Am) to the dual model."""
    C.check(P)
    m = C.m
    if C.family == "Em":
        if P.is_infinity or P.x == 0:
            raise KernelPointError(f"{P} is in the kernel of the 2-isogeny")
        image = Point(P.y**2 / P.x**2, P.y * (m - P.x**2) / P.x**2)
        target = Curve.EmDual(m)
    elif C.family == "Am":
        if P.is_infinity or P.x == 0:
            raise KernelPointError(f"{P} is in the kernel of the 3-isogeny")
        image = Point((P.x**3 + 4 * m * m) / P.x**2, P.y * (P.x**3 - 8 * m * m) / P.x**3)
        target = Curve.AmDual(m)
    else:
        raise ValueError("isogenies are defined for Em and Am models only")
    target.check(image)
    return target, image


def construct_point_T2(a: int, b: int) -> tuple[Curve, Point]:
    """(b^2, a b^2) on y^2 = x^3 + b^2 (a^2 - b^2) x."""
    if a == 0 or b == 0 or a * a == b * b:
        raise ValueError("need a, b nonzero with a^2 != b^2")
    C = Curve.Em(b * b * (a * a - b * b))
    P = Point.affine(b * b, a * b * b)
    C.check(P)
    return C, P


def construct_point_T3(a: int, b: int) -> tuple[Curve, Point]:
    """(b^2 - a^2, a^2 b - b^3) on y^2 = x^3 + a^2 (a^2 - b^2)^2.

    The ordinate is b(a^2 - b^2); the variant a b^2 - b^3 fails already at
    (a, b) = (2, 1).
    """
    if a == 0 or b == 0 or a * a == b * b:
        raise ValueError("need a, b nonzero with a^2 != b^2")
    C = Curve.Am(a * (a * a - b * b))
    P = Point.affine(b * b - a * a, a * a * b - b**3)
    C.check(P)
    return C, P


def minimize_model(C: Curve, P: Point) -> tuple[Curve, Point, int]:
    """Strip 4th powers (Em) or cubes (Am) from m, transporting P.

    Returns (curve, point, u) where the map is (x, y) -> (x/u^2, y/u^3).
    """
    C.check(P)
    if C.family == "Em":
        s, u = powerfree_part(C.m, 4)
        target = Curve.Em(s)
    elif C.family == "Am":
        s, u = powerfree_part(C.m, 3)
        target = Curve.Am(s)
    else:
        raise ValueError("minimize_model handles Em and Am models")
    Q = P if P.is_infinity else Point(P.x / u**2, P.y / u**3)
    target.check(Q)
    return target, Q, u
