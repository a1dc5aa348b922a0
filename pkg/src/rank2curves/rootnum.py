"""Global root numbers of the two twist families from congruence formulas.

Both formulas are applied exactly as stated, including the archimedean sign
convention w_inf = sgn(m) for y^2 = x^3 + m x.  That convention gives -1 for
m = +-1 (both rank 0), so values outside the square-free classes used by the
families should not be read as true root numbers without independent checks.
"""

from __future__ import annotations

from .arith import factor, is_squarefree

__all__ = ["root_number_Em", "root_number_Am", "local_root_numbers_Am"]


def root_number_Em(m: int) -> int:
    """Root number of y^2 = x^3 + m x for square-free m: sgn(m) * w_2."""
    if not is_squarefree(m):
        raise ValueError(f"m = {m} is not square-free")
    w_inf = 1 if m > 0 else -1
    w_2 = -1 if m % 16 in (1, 3, 11, 13) else 1
    return w_inf * w_2


def local_root_numbers_Am(m: int) -> dict[int, int]:
    """Local factors {3: w_3, p: w_p for p | m} for y^2 = x^3 + m^2."""
    if not is_squarefree(m) or m % 2 == 0 or m % 3 == 0:
        raise ValueError(f"m = {m} must be square-free and prime to 6")
    local = {3: -1 if (m * m) % 9 == 7 else 1}
    for p in factor(m):
        local[p] = -1 if p % 3 == 2 else 1
    return local


def root_number_Am(m: int) -> int:
    w = 1
    for sign in local_root_numbers_Am(m).values():
        w *= sign
    return w
