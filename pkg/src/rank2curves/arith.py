"""Exact integer arithmetic: primality, factorization, power-free parts and
the Eisenstein integers O_K, K = Q(sqrt(-3)).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "EisensteinNum",
    "ZETA3",
    "is_prime",
    "factor",
    "divisors",
    "powerfree_part",
    "is_squarefree",
    "squarefree_part",
    "valuation",
    "sqrt_mod",
    "eisenstein_split",
    "cube_class_f4",
    "poly_roots_mod_p",
]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

# Miller-Rabin with the first 13 prime bases is deterministic below this bound
# (Sorenson & Webster 2015).
MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981

_TRIAL_LIMIT = 1000


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_prp(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
        if D == 13 and math.isqrt(n) ** 2 == n:
            return False
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = P * U + V, D * U + P * V
            U = (U + n if U % 2 else U) // 2 % n
            V = (V + n if V % 2 else V) // 2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test.

    Exact for n < 3.3e24 (Miller-Rabin on the 13 smallest prime bases).
    Larger inputs additionally pass a strong Lucas test (BPSW); no
    counterexample to BPSW is known, but it is not a proof.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 43 * 43:
        return True
    if not all(_strong_probable_prime(n, a) for a in _SMALL_PRIMES):
        return False
    if n < MR_DETERMINISTIC_BOUND:
        return True
    return _strong_lucas_prp(n)


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _factor_into(r, out)
        _factor_into(r, out)
        return
    d = _pollard_brent(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


def factor(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}.

    The sign is dropped; ``factor(-1) == {}``. Trial division below 1000,
    then Pollard-Brent on the cofactor.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n and d < _TRIAL_LIMIT:
        for c in (d, d + 2):
            while n % c == 0:
                out[c] = out.get(c, 0) + 1
                n //= c
        d += 6
    if n > 1:
        if d * d > n:
            out[n] = out.get(n, 0) + 1
        else:
            _factor_into(n, out)
    return dict(sorted(out.items()))


def divisors(n: int) -> list[int]:
    """Positive divisors of n != 0, ascending."""
    divs = [1]
    for p, e in factor(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def valuation(n: int | Fraction, p: int) -> int:
    """p-adic valuation of a nonzero integer or rational."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    if isinstance(n, Fraction):
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def powerfree_part(n: int, k: int) -> tuple[int, int]:
    """Write n = t**k * s with s k-th-power-free; return (s, t).

    s keeps the sign of n and t >= 1.

    >>> powerfree_part(48, 4)
    (3, 2)
    >>> powerfree_part(-88125, 4)
    (-141, 5)
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    if k < 2:
        raise ValueError("k must be >= 2")
    s, t = (1 if n > 0 else -1), 1
    for p, e in factor(n).items():
        t *= p ** (e // k)
        s *= p ** (e % k)
    return s, t


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factor(n).values())


def squarefree_part(n: int | Fraction) -> int:
    """Square-free integer in the same square class as the nonzero rational n."""
    if isinstance(n, Fraction):
        n = n.numerator * n.denominator
    return powerfree_part(n, 2)[0]


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a modulo the odd prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(f: list[int], g: list[int], p: int) -> list[int]:
    f = _trim([c % p for c in f])
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        shift = len(f) - len(g)
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gc) % p
        _trim(f)
    return f


def _pmul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def _ppow(base: list[int], e: int, g: list[int], p: int) -> list[int]:
    result, base = [1], _pmod(base, g, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), g, p)
        base = _pmod(_pmul(base, base, p), g, p)
        e >>= 1
    return result


def _pgcd(f: list[int], g: list[int], p: int) -> list[int]:
    f, g = _trim([c % p for c in f]), _trim([c % p for c in g])
    while g:
        f, g = g, _pmod(f, g, p)
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def _pdivexact(f: list[int], g: list[int], p: int) -> list[int]:
    quot = [0] * (len(f) - len(g) + 1)
    rem = list(f)
    inv = pow(g[-1], -1, p)
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + len(g) - 1] * inv % p
        quot[k] = c
        for i, gc in enumerate(g):
            rem[k + i] = (rem[k + i] - c * gc) % p
    return quot


def _split_roots(f: list[int], p: int, rng: random.Random) -> list[int]:
    # f monic and a product of distinct linear factors over F_p
    if len(f) == 1:
        return []
    if len(f) == 2:
        return [(-f[0]) % p]
    while True:
        h = _ppow([rng.randrange(p), 1], (p - 1) // 2, f, p) or [0]
        h[0] = (h[0] - 1) % p
        h = _trim(h)
        if not h:
            continue
        g = _pgcd(f, h, p)
        if 1 < len(g) < len(f):
            return _split_roots(g, p, rng) + _split_roots(_pdivexact(f, g, p), p, rng)


def poly_roots_mod_p(coeffs: list[int], p: int) -> list[int]:
    """Distinct roots in F_p of a polynomial (constant term first).

    Brute force for small p, otherwise gcd with t^p - t and Cantor-Zassenhaus
    splitting.  The zero polynomial is rejected.
    """
    f = _trim([c % p for c in coeffs])
    if not f:
        raise ValueError("zero polynomial mod p")
    if len(f) == 1:
        return []
    if p < 64:
        return [r for r in range(p) if sum(c * pow(r, i, p) for i, c in enumerate(f)) % p == 0]
    inv = pow(f[-1], -1, p)
    f = [c * inv % p for c in f]
    tp = _ppow([0, 1], p, f, p)
    tp += [0] * (2 - len(tp))
    tp[1] = (tp[1] - 1) % p
    tp = _trim(tp)
    g = _pgcd(f, tp, p) if tp else f
    return sorted(_split_roots(g, p, random.Random(p)))


@dataclass(frozen=True)
class EisensteinNum:
    """v = v1 + v2*sqrt(-3) with rational v1, v2."""

    v1: Fraction
    v2: Fraction

    def __init__(self, v1, v2=0):
        object.__setattr__(self, "v1", Fraction(v1))
        object.__setattr__(self, "v2", Fraction(v2))

    def norm(self) -> Fraction:
        return self.v1 * self.v1 + 3 * self.v2 * self.v2

    def conj(self) -> EisensteinNum:
        """The nontrivial automorphism tau of K."""
        return EisensteinNum(self.v1, -self.v2)

    def is_integral(self) -> bool:
        a, b = 2 * self.v1, 2 * self.v2
        return a.denominator == 1 and b.denominator == 1 and (a - b) % 2 == 0

    def __mul__(self, other):
        if not isinstance(other, EisensteinNum):
            other = EisensteinNum(other)
        return EisensteinNum(
            self.v1 * other.v1 - 3 * self.v2 * other.v2,
            self.v1 * other.v2 + self.v2 * other.v1,
        )

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, EisensteinNum):
            other = EisensteinNum(other)
        return EisensteinNum(self.v1 + other.v1, self.v2 + other.v2)

    def __neg__(self):
        return EisensteinNum(-self.v1, -self.v2)

    def __truediv__(self, other):
        if not isinstance(other, EisensteinNum):
            other = EisensteinNum(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in K")
        num = self * other.conj()
        return EisensteinNum(num.v1 / n, num.v2 / n)

    def __pow__(self, k: int):
        if k < 0:
            return EisensteinNum(1) / self ** (-k)
        result, base = EisensteinNum(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def omega_coords(self) -> tuple[int, int]:
        """(x, y) with v = x + y*omega, omega = (1 + sqrt(-3))/2."""
        if not self.is_integral():
            raise ValueError(f"{self} is not an algebraic integer")
        return int(self.v1 - self.v2), int(2 * self.v2)

    def __str__(self):
        sign = "-" if self.v2 < 0 else "+"
        return f"{self.v1} {sign} {abs(self.v2)}*sqrt(-3)"


ZETA3 = EisensteinNum(Fraction(-1, 2), Fraction(1, 2))


def eisenstein_split(p: int) -> EisensteinNum:
    """Element of norm p for a prime p = 1 (mod 3), via Cornacchia.

    Returns the representative v1 + v2*sqrt(-3) with positive integer
    coordinates, which is unique for a prime p.
    """
    if p % 3 != 1 or not is_prime(p):
        raise ValueError(f"{p} is not a prime split in Q(sqrt(-3))")
    r = sqrt_mod(-3, p)
    if r is None:  # pragma: no cover - p = 1 (mod 3) guarantees a root
        raise ArithmeticError("no square root of -3")
    if 2 * r > p:
        r = p - r
    a, b = p, r
    bound = math.isqrt(p)
    while b > bound:
        a, b = b, a % b
    rest = p - b * b
    if rest % 3:
        raise ArithmeticError(f"Cornacchia failed for {p}")
    c = math.isqrt(rest // 3)
    if c * c * 3 != rest:
        raise ArithmeticError(f"Cornacchia failed for {p}")
    return EisensteinNum(b, c)


# O_K / 2 O_K = F_4 = {0, 1, w, w + 1}; w has multiplicative order 3.
# Keys are (x mod 2, y mod 2) for x + y*w.
_F4_DLOG = {(1, 0): 0, (0, 1): 1, (1, 1): 2}


def cube_class_f4(v: EisensteinNum) -> int:
    """Discrete log of tau(v)/v in F_4^* (cyclic of order 3).

    Zero exactly when tau(v)/v reduces to a cube, i.e. to 1.
    """
    if not v.is_integral():
        raise ValueError("v must be an algebraic integer")
    if v.norm() % 2 == 0:
        raise ValueError("v must have odd norm")

    def dlog(u: EisensteinNum) -> int:
        x, y = u.omega_coords()
        return _F4_DLOG[(x % 2, y % 2)]

    return (dlog(v.conj()) - dlog(v)) % 3
