"""Descent via 3-isogeny on A_pq : y^2 = x^3 + (pq)^2.

alpha sends A(Q) to Q^*/Q^*3 by (x, y) -> y - m, with alpha(0, m) = 1/(2m).
Its image lies in <2, p, q>; the class d = d1^2 d2 is in the Selmer group iff
the diagonal cubic (d1, d2, 2pq/(d1 d2)) is everywhere locally solvable.  The
27 classes fall into 14 inverse pairs; four cosets of <2pq> (each closed
under inversion) decide everything beyond the trivially solvable ones.

The dual map alpha' lands in K_N(S,3), K = Q(sqrt(-3)), and is only bounded:
candidates are cut down by the norm condition and then by the Q_2 cube test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .arith import ZETA3, EisensteinNum, eisenstein_split, factor, is_prime
from .curves import Curve, Point
from .localsolve import TernaryCubic, fast_mod9, kcubic_solvable_at_2, ternary_cubic_solvable

__all__ = [
    "CubeClass",
    "AlphaImageBound",
    "OutsideProvenScope",
    "alpha_eval",
    "representative_spaces",
    "ALPHA_FAMILIES",
    "alpha_upper",
    "alpha_prime_candidates",
    "alpha_prime_upper",
    "rank_interval_3",
    "congruence_exclusions",
]


class OutsideProvenScope(ValueError):
    """Hypotheses of the alpha' bound fail; no bound is asserted."""


@dataclass(frozen=True, order=True)
class CubeClass:
    """Class of d = d1^2 * d2 in Q^*/Q^*3, d1, d2 square-free, coprime, positive."""

    d1: int
    d2: int

    @classmethod
    def of(cls, r) -> CubeClass:
        r = Fraction(r)
        if r == 0:
            raise ValueError("0 has no cube class")
        exps: dict[int, int] = {}
        if abs(r.numerator) > 1:
            for p, e in factor(r.numerator).items():
                exps[p] = exps.get(p, 0) + e
        if r.denominator > 1:
            for p, e in factor(r.denominator).items():
                exps[p] = exps.get(p, 0) - e
        return cls._from_exponents(exps)

    @classmethod
    def _from_exponents(cls, exps) -> CubeClass:
        d1 = d2 = 1
        for p, e in exps.items():
            e %= 3
            if e == 1:
                d2 *= p
            elif e == 2:
                d1 *= p
        return cls(d1, d2)

    def exponents(self) -> dict[int, int]:
        out = {}
        for p in factor(self.d1) if self.d1 > 1 else ():
            out[p] = 2
        for p in factor(self.d2) if self.d2 > 1 else ():
            out[p] = 1
        return out

    @property
    def value(self) -> int:
        return self.d1 * self.d1 * self.d2

    def __mul__(self, other: CubeClass) -> CubeClass:
        exps = self.exponents()
        for p, e in other.exponents().items():
            exps[p] = exps.get(p, 0) + e
        return CubeClass._from_exponents(exps)

    def inverse(self) -> CubeClass:
        return CubeClass(self.d2, self.d1)

    def space(self, m: int) -> TernaryCubic:
        """The cubic (d1, d2, 2m/(d1 d2)) attached to this class."""
        e, r = divmod(2 * m, self.d1 * self.d2)
        if r:
            raise ValueError(f"{self} is not supported on the primes of 2m")
        return TernaryCubic(self.d1, self.d2, e)

    def __str__(self):
        return f"{self.d1}^2*{self.d2}" if self.d1 > 1 else str(self.d2)


ONE = CubeClass(1, 1)


def _closure(gens) -> frozenset:
    group = {ONE}
    frontier = [ONE]
    gens = list(gens)
    while frontier:
        g = frontier.pop()
        for h in gens:
            x = g * h
            if x not in group:
                group.add(x)
                frontier.append(x)
    return frozenset(group)


def alpha_eval(P: Point, m: int) -> CubeClass:
    """alpha(O) = 1, alpha(0, m) = 1/(2m), alpha(x, y) = y - m otherwise."""
    Curve.Am(m).check(P)
    if P.is_infinity:
        return ONE
    if P.x == 0 and P.y == m:
        return CubeClass.of(Fraction(1, 2 * m))
    return CubeClass.of(P.y - m)


def _check_pq(p: int, q: int) -> None:
    if p == q or p < 5 or q < 5 or not is_prime(p) or not is_prime(q):
        raise ValueError(f"need distinct primes p, q >= 5, got ({p}, {q})")


def representative_spaces(p: int, q: int) -> list[tuple[CubeClass, TernaryCubic]]:
    """One class from each of the 14 inverse pairs, with its cubic."""
    m = p * q
    seen: set = set()
    reps = []
    for e2, ep, eq in product(range(3), repeat=3):
        c = CubeClass._from_exponents({2: e2, p: ep, q: eq})
        if c in seen:
            continue
        seen.update({c, c.inverse()})
        reps.append((c, c.space(m)))
    return reps


# Each family is a coset of <2pq> together with its inverse coset; one
# representative cubic decides the whole family.  Spaces as (d1, d2, 2pq/(d1 d2)).
ALPHA_FAMILIES = (
    ("4", lambda p, q: [(1, 2, p * q), (p * q, 2, 1), (1, p * q, 2)]),
    ("q^2", lambda p, q: [(1, q, 2 * p), (1, 2 * p, q), (2 * p, q, 1)]),
    ("2p^2", lambda p, q: [(2, p, q), (2, q, p), (p, q, 2)]),
    ("p^2", lambda p, q: [(2 * q, p, 1), (1, 2 * q, p), (1, p, 2 * q)]),
)


def _locally_solvable(space: TernaryCubic, method: str = "auto") -> bool:
    return all(ternary_cubic_solvable(space, ell, method) for ell in space.bad_primes())


def _family_class(label: str, p: int, q: int) -> CubeClass:
    return CubeClass.of({"4": 4, "q^2": q * q, "2p^2": 2 * p * p, "p^2": p * p}[label])


@dataclass(frozen=True)
class AlphaImageBound:
    p: int
    q: int
    lower: frozenset
    upper: frozenset
    family_solvable: tuple

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise AssertionError("lower bound not contained in upper bound")
        for s in (self.lower, self.upper):
            if any(a * b not in s for a in s for b in s):
                raise AssertionError("image bound is not a group")
        if not {ONE, CubeClass.of(2 * self.p * self.q)} <= self.lower:
            raise AssertionError("lower bound lacks <2pq>")

    @property
    def upper_order(self) -> int:
        return len(self.upper)

    @property
    def lower_order(self) -> int:
        return len(self.lower)


def alpha_upper(p: int, q: int, points=()) -> AlphaImageBound:
    """Upper and lower bounds for im(alpha) on A_pq.

    ``points`` are optional rational points of A_pq whose alpha-images are
    added to the lower bound.
    """
    _check_pq(p, q)
    m = p * q
    base = CubeClass.of(2 * m)
    lower = _closure([base] + [alpha_eval(P, m) for P in points])
    verdicts = []
    gens = [base]
    for label, spaces in ALPHA_FAMILIES:
        u = spaces(p, q)[0]
        ok = _locally_solvable(TernaryCubic(*u))
        verdicts.append((label, ok))
        if ok:
            gens.append(_family_class(label, p, q))
    upper = _closure(gens)
    return AlphaImageBound(p, q, lower, upper, tuple(verdicts))


def congruence_exclusions(p: int, q: int) -> set[str]:
    """Families excluded at 3 by the mod-9 criterion alone."""
    out = set()
    for label, spaces in ALPHA_FAMILIES:
        if fast_mod9(TernaryCubic(*spaces(p, q)[0]), 3) is False:
            out.add(label)
    return out


def _split_and_inert(p: int, q: int):
    split = [r for r in (p, q) if r % 3 == 1]
    if len(split) != 1:
        raise OutsideProvenScope(
            f"({p}, {q}): the alpha' bound needs exactly one prime = 1 (mod 3)"
        )
    return split[0]


def alpha_prime_candidates(p: int, q: int) -> list[tuple[tuple[int, int], EisensteinNum, bool]]:
    """The nine classes zeta^i * (q'^2 tau(q'))^j allowed by the norm condition.

    Each entry is ((i, j), v, passes_Q2) with d = v^2 tau(v); v = zeta^i q'^j
    realizes d because v^2 tau(v) = zeta^i (q'^2 tau q')^j for unit zeta.
    """
    _check_pq(p, q)
    qq = eisenstein_split(_split_and_inert(p, q))
    out = []
    for i, j in product(range(3), repeat=2):
        v = ZETA3**i * qq**j
        out.append(((i, j), v, kcubic_solvable_at_2(v)))
    return out


def alpha_prime_upper(p: int, q: int) -> int:
    """Bound on |im alpha'|: largest subgroup of the candidates passing at 2."""
    passing = {ij for ij, _, ok in alpha_prime_candidates(p, q) if ok}
    best = 1
    for g in [(0, 1), (1, 0), (1, 1), (2, 1)]:
        sub = {((k * g[0]) % 3, (k * g[1]) % 3) for k in range(3)}
        if sub <= passing:
            best = 3
    # a subgroup of order 9 would need every candidate to pass
    if len(passing) == 9:
        best = 9
    return best


def _log3(n: int) -> int:
    k = 0
    while n > 1:
        if n % 3:
            raise ValueError(f"{n} is not a power of 3")
        n //= 3
        k += 1
    return k


def rank_interval_3(p: int, q: int, nontorsion_witness: bool, bound: AlphaImageBound | None = None):
    """(lo, hi) for rk A_pq(Q) from |im alpha| |im alpha'| = 3^(rank + 1)."""
    bound = bound or alpha_upper(p, q)
    hi = _log3(bound.upper_order * alpha_prime_upper(p, q)) - 1
    lo = 1 if nontorsion_witness else max(_log3(bound.lower_order) - 1, 0)
    return lo, hi
