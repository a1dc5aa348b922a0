"""Prime-pair search and rank certificates for the two curve families.

T2: 2b^2 = p + q, p = 15 and q = 3 (mod 16), curve E_{-pq} : y^2 = x^3 - pq x.
T3: 2a^3 = 27p + q, p = 2 and q = 7 (mod 9), curve A_pq : y^2 = x^3 + (pq)^2.

A certificate records everything needed to re-derive it: the witness point,
torsion, root number, descent data and the resulting rank interval.  The
rank claimed is conditional on the parity conjecture and says so in the
``assumes`` field.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import descent2, descent3
from .arith import is_prime
from .curves import (
    Curve,
    Point,
    apply_isogeny,
    construct_point_T2,
    construct_point_T3,
    is_nontorsion,
    minimize_model,
    torsion_closed_form,
    torsion_subgroup,
)
from .rootnum import root_number_Am, root_number_Em

__all__ = [
    "HypothesisError",
    "CertificateError",
    "PrimePairParams",
    "T2_PARAMS",
    "T3_PARAMS",
    "prime_sieve",
    "search_prime_pairs",
    "RankCertificate",
    "certify_T2",
    "certify_T3",
    "certify",
    "verify_certificate",
    "search_certificates",
]


class HypothesisError(ValueError):
    """Input violates the hypotheses of a construction."""


class CertificateError(RuntimeError):
    """An internal check failed while assembling or re-validating a certificate."""


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise HypothesisError(what)


def _check(cond: bool, invariant: str) -> None:
    if not cond:
        raise CertificateError(f"failed invariant: {invariant}")


# ---------------------------------------------------------------------------
# prime pairs


@dataclass(frozen=True)
class PrimePairParams:
    """Solve A*p1 + B*p2 = 2*f(n) in primes p1 = i, p2 = j (mod g).

    ``f`` is given by integer coefficients, constant term first.
    """

    A: int
    B: int
    g: int
    i: int
    j: int
    f: tuple[int, ...]
    n_min: int = 1
    n_max: int = 100

    def __post_init__(self):
        if math.gcd(self.A, self.B) != 1 or self.A % 2 == 0 or self.B % 2 == 0:
            raise HypothesisError("A, B must be coprime and odd")
        if self.A <= 0 or self.B <= 0:
            raise HypothesisError("A, B must be positive")
        for r in (self.i, self.j):
            if not 0 < r < self.g or math.gcd(r, self.g) != 1:
                raise HypothesisError(f"residue {r} must be a unit in (0, {self.g})")
        if self.n_min < 1 or self.n_max < self.n_min:
            raise HypothesisError("need 1 <= n_min <= n_max")

    def target(self, n: int) -> int:
        return 2 * sum(c * n**k for k, c in enumerate(self.f))

    def feasible(self, n: int) -> bool:
        """Necessary congruence for any solution at n."""
        return (self.target(n) - self.A * self.i - self.B * self.j) % self.g == 0

    def with_range(self, n_min: int, n_max: int) -> PrimePairParams:
        return PrimePairParams(self.A, self.B, self.g, self.i, self.j, self.f, n_min, n_max)


T2_PARAMS = PrimePairParams(A=1, B=1, g=16, i=15, j=3, f=(0, 0, 1))
T3_PARAMS = PrimePairParams(A=27, B=1, g=9, i=2, j=7, f=(0, 0, 0, 1))


def prime_sieve(limit: int) -> np.ndarray:
    """Boolean array s with s[k] true iff k is prime, for 0 <= k <= limit."""
    s = np.ones(max(limit + 1, 2), dtype=bool)
    s[:2] = False
    for k in range(2, math.isqrt(limit) + 1):
        if s[k]:
            s[k * k :: k] = False
    return s


def _best_pair(T: int, params: PrimePairParams, sieve: np.ndarray, primes: np.ndarray):
    """Solution using the smallest prime in either role; ties go to smaller p1."""
    A, B, g = params.A, params.B, params.g
    best = None
    for role in ("p1", "p2"):
        own, other = (A, B) if role == "p1" else (B, A)
        r_own, r_other = (params.i, params.j) if role == "p1" else (params.j, params.i)
        s = primes[(primes % g == r_own) & (own * primes < T)]
        rest = T - own * s
        s, rest = s[rest % other == 0], rest[rest % other == 0]
        partner = rest // other
        ok = (partner % g == r_other) & sieve[partner]
        if not ok.any():
            continue
        k = int(np.argmax(ok))
        small, big = int(s[k]), int(partner[k])
        pair = (small, big) if role == "p1" else (big, small)
        key = (small, pair[0])
        if best is None or key < best[0]:
            best = (key, pair)
    return None if best is None else best[1]


def search_prime_pairs(params: PrimePairParams) -> list[tuple[int, int, int]]:
    """(n, p1, p2) for every n in range having a solution, ascending in n.

    For each n the reported pair is the one containing the smallest prime
    (in either position); remaining ties are broken by the smaller p1.
    """
    targets = {n: params.target(n) for n in range(params.n_min, params.n_max + 1)}
    live = {n: T for n, T in targets.items() if T > 0 and params.feasible(n)}
    if not live:
        return []
    limit = max(live.values()) // min(params.A, params.B)
    sieve = prime_sieve(limit)
    primes = np.flatnonzero(sieve).astype(object if limit > 2**62 else np.int64)
    hits = []
    for n, T in sorted(live.items()):
        pair = _best_pair(T, params, sieve, primes[primes < T])
        if pair is not None:
            hits.append((n, *pair))
    return hits


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class RankCertificate:
    family: str
    search_index: int
    p: int
    q: int
    a: int
    b: int
    m: int
    point: Point
    model_m: int
    model_point: Point
    scale: int
    torsion: str
    root_number: int
    descent: dict
    rank_interval: tuple[int, int]
    rank_under_parity: int | None
    assumes: tuple[str, ...] = ("parity_conjecture",)
    provenance: tuple[str, ...] = field(default_factory=tuple)

    def to_json_obj(self) -> dict:
        """JSON-ready dict: big integers and rationals as strings."""

        def rat(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        def pt(P: Point) -> dict:
            return {"x": rat(P.x), "y": rat(P.y)}

        return {
            "family": self.family,
            "search_index": str(self.search_index),
            "p": str(self.p),
            "q": str(self.q),
            "a": str(self.a),
            "b": str(self.b),
            "m": str(self.m),
            "point": pt(self.point),
            "unminimized": {"m": str(self.model_m), "point": pt(self.model_point), "scale": str(self.scale)},
            "torsion": self.torsion,
            "root_number": self.root_number,
            "descent": self.descent,
            "rank_interval": list(self.rank_interval),
            "rank_under_parity": self.rank_under_parity,
            "assumes": list(self.assumes),
            "provenance": list(self.provenance),
        }


def _even_in(lo: int, hi: int) -> int | None:
    evens = [r for r in range(lo, hi + 1) if r % 2 == 0]
    return evens[0] if len(evens) == 1 else None


def certify_T2(b: int, p: int, q: int) -> RankCertificate:
    """Certificate for E_{-pq} from 2b^2 = p + q, p = 15, q = 3 (mod 16)."""
    _require(b > 0, "b must be positive")
    _require(is_prime(p), f"p = {p} is not prime")
    _require(is_prime(q), f"q = {q} is not prime")
    _require(p % 16 == 15, f"p = {p} is not 15 mod 16")
    _require(q % 16 == 3, f"q = {q} is not 3 mod 16")
    _require(2 * b * b == p + q, f"2b^2 = {2 * b * b} != p + q = {p + q}")

    a = (p - q) // 2
    pq = p * q
    _check(a * a - b**4 == -pq, "a^2 - b^4 = -pq")

    big, P0 = construct_point_T2(a, b * b)
    C, P, t = minimize_model(big, P0)
    _check(C.m == -pq and t == b, "minimal model is E_{-pq} with scale b")
    _check(C.contains(P), "witness on E_{-pq}")
    _check(is_nontorsion(P, C), "witness is non-torsion")
    apply_isogeny(P, C)  # raises unless the image lies on y^2 = x^3 + 4pq x

    tors = torsion_subgroup(C)
    _check(tors.invariants == (2,) == torsion_closed_form(C), "torsion is Z/2")
    w = root_number_Em(-pq)
    _check(w == 1, "root number +1")

    sel = descent2.selmer_group(-pq, descent2.PHI)
    seld = descent2.selmer_group(-pq, descent2.PHI_DUAL)
    _check(pq in sel, "pq in Sel_phi")
    _check(-pq in seld, "-pq in Sel_phi'")
    if pq % 8 not in (1, 7):
        _check(2 not in sel and sel.order <= 4, "2 not in Sel_phi and |Sel_phi| <= 4")
    if p % 4 != 1 or q % 4 != 1:
        _check(all(d not in seld for d in (-1, 2, -2)), "-1, 2, -2 not in Sel_phi'")
    _check(sel.dim + seld.dim <= 4, "dim Sel_phi + dim Sel_phi' <= 4")
    upper = sel.dim + seld.dim - 2
    _check(upper >= 1, "descent bound admits the witness")
    interval = (1, upper)
    _check(1 <= interval[0] <= interval[1] <= 2, "rank interval within [1, 2]")
    parity = _even_in(*interval)
    _check(parity is not None, "rank interval contains exactly one even value")

    order = lambda ds: [str(d) for d in sorted(ds, key=lambda d: (abs(d), d < 0))]  # noqa: E731
    return RankCertificate(
        family="T2",
        search_index=b,
        p=p,
        q=q,
        a=a,
        b=b,
        m=-pq,
        point=P,
        model_m=big.m,
        model_point=P0,
        scale=t,
        torsion="Z/2",
        root_number=w,
        descent={
            "sel_phi": order(sel.members),
            "sel_phi_dual": order(seld.members),
            "dim_sel_phi": sel.dim,
            "dim_sel_phi_dual": seld.dim,
            "rank_upper": upper,
        },
        rank_interval=interval,
        rank_under_parity=parity,
        provenance=(
            "witness (b^4, a*b^4) on y^2 = x^3 + b^4(a^2 - b^4)x, scaled by (x/b^2, y/b^3)",
            "Selmer groups computed exactly over all classes and places",
        ),
    )


def certify_T3(a: int, p: int, q: int) -> RankCertificate:
    """Certificate for A_pq from 2a^3 = 27p + q, p = 2, q = 7 (mod 9)."""
    _require(a > 0, "a must be positive")
    _require(p >= 5 and is_prime(p), f"p = {p} is not a prime >= 5")
    _require(q >= 5 and is_prime(q), f"q = {q} is not a prime >= 5")
    _require(p % 9 == 2, f"p = {p} is not 2 mod 9")
    _require(q % 9 == 7, f"q = {q} is not 7 mod 9")
    _require(2 * a**3 == 27 * p + q, f"2a^3 = {2 * a**3} != 27p + q = {27 * p + q}")

    b = (27 * p - q) // 2
    pq = p * q
    _check(a**6 - b * b == 27 * pq, "a^6 - b^2 = 27pq")

    big, P0 = construct_point_T3(a**3, b)
    C, P, u = minimize_model(big, P0)
    _check(C.m == pq and u == 3 * a, "minimal model is A_pq with scale 3a")
    _check(C.contains(P), "witness on A_pq")
    _check(is_nontorsion(P, C), "witness is non-torsion")
    apply_isogeny(P, C)

    tors = torsion_subgroup(C)
    _check(tors.invariants == (3,) == torsion_closed_form(C), "torsion is Z/3")
    w = root_number_Am(pq)
    _check(w == 1, "root number +1")

    try:
        bound = descent3.alpha_upper(p, q, points=[P])
        prime_bound = descent3.alpha_prime_upper(p, q)
    except descent3.OutsideProvenScope as exc:
        raise CertificateError(f"failed invariant: {exc}") from exc
    two_pq = descent3.CubeClass.of(2 * pq)
    _check({descent3.ONE, two_pq} <= bound.lower, "{1, 2pq} in lower image bound")
    witness_class = descent3.alpha_eval(P, pq)
    _check(witness_class in bound.upper, "alpha(witness) in upper image bound")
    _check(bound.upper_order <= 9, "|im alpha| <= 9")
    _check(prime_bound <= 3, "|im alpha'| <= 3")
    interval = descent3.rank_interval_3(p, q, True, bound)
    _check(1 <= interval[0] <= interval[1] <= 2, "rank interval within [1, 2]")
    parity = _even_in(*interval)
    _check(parity is not None, "rank interval contains exactly one even value")

    classes = lambda s: [str(c.value) for c in sorted(s, key=lambda c: c.value)]  # noqa: E731
    return RankCertificate(
        family="T3",
        search_index=a,
        p=p,
        q=q,
        a=a,
        b=b,
        m=pq,
        point=P,
        model_m=big.m,
        model_point=P0,
        scale=u,
        torsion="Z/3",
        root_number=w,
        descent={
            "im_alpha_upper": classes(bound.upper),
            "im_alpha_lower": classes(bound.lower),
            "im_alpha_order_max": bound.upper_order,
            "im_alpha_prime_order_max": prime_bound,
            "alpha_families": {label: ok for label, ok in bound.family_solvable},
            "alpha_witness": str(witness_class.value),
        },
        rank_interval=interval,
        rank_under_parity=parity,
        provenance=(
            "witness (b^2 - a^6, a^6 b - b^3) on y^2 = x^3 + a^6(a^6 - b^2)^2, scaled by u = 3a",
            "ordinate b(a^6 - b^2); the variant a^3 b^2 - b^3 is not on the curve",
            "im alpha' bounded via the norm condition and the Q_2 cube test, not computed",
        ),
    )


def certify(torsion: int, index: int, p: int, q: int) -> RankCertificate:
    if torsion == 2:
        return certify_T2(index, p, q)
    if torsion == 3:
        return certify_T3(index, p, q)
    raise HypothesisError(f"torsion must be 2 or 3, got {torsion}")


def verify_certificate(obj: dict) -> RankCertificate:
    """Recompute a certificate from its defining fields and compare every field.

    Raises CertificateError on any mismatch or malformed record.
    """
    try:
        family = obj["family"]
        index, p, q = int(obj["search_index"]), int(obj["p"]), int(obj["q"])
        x, y = Fraction(obj["point"]["x"]), Fraction(obj["point"]["y"])
        m = int(obj["m"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from exc
    if family not in ("T2", "T3"):
        raise CertificateError(f"unknown family {family!r}")
    curve = Curve.Em(m) if family == "T2" else Curve.Am(m)
    if not curve.contains(Point(x, y)):
        raise CertificateError("failed invariant: stored point not on stored curve")
    try:
        cert = certify(2 if family == "T2" else 3, index, p, q)
    except HypothesisError as exc:
        raise CertificateError(f"failed invariant: {exc}") from exc
    if cert.to_json_obj() != obj:
        diff = sorted(k for k, v in cert.to_json_obj().items() if obj.get(k) != v)
        raise CertificateError(f"certificate fields disagree with recomputation: {diff}")
    return cert


def _certify_chunk(args):
    torsion, n_min, n_max = args
    params = (T2_PARAMS if torsion == 2 else T3_PARAMS).with_range(n_min, n_max)
    return [certify(torsion, n, p1, p2) for n, p1, p2 in search_prime_pairs(params)]


def search_certificates(torsion: int, n_max: int, n_min: int = 1, workers: int = 1) -> list[RankCertificate]:
    """Search n in [n_min, n_max] and certify every hit, in ascending n.

    With workers > 1 the range is split into contiguous chunks handled by
    separate processes; results are concatenated in chunk order, so the
    output does not depend on the worker count.
    """
    if torsion not in (2, 3):
        raise HypothesisError(f"torsion must be 2 or 3, got {torsion}")
    if n_min < 1 or n_max < n_min:
        raise HypothesisError("need 1 <= n_min <= n_max")
    if workers <= 1:
        return _certify_chunk((torsion, n_min, n_max))
    total = n_max - n_min + 1
    pieces = min(total, 4 * workers)
    bounds = [n_min + total * k // pieces for k in range(pieces + 1)]
    chunks = [(torsion, lo, hi - 1) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
    with ProcessPoolExecutor(workers) as pool:
        return [c for part in pool.map(_certify_chunk, chunks) for c in part]
