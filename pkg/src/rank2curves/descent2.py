"""Descent via 2-isogeny on y^2 = x^3 + m x.

The phi-side classes d in Q(S,2) are tested on ``d w^2 = d^2 - 4m z^4``; the
dual side on ``d w^2 = d^2 + 16m z^4``, which is Q-isomorphic to
``d w^2 = d^2 + m z^4`` after z -> z/2.  Both Selmer groups are computed
exactly by running every class through every place of S.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .arith import factor, powerfree_part, squarefree_part
from .localsolve import QuarticSpace, quartic_solvable_padic, quartic_solvable_real

__all__ = [
    "PHI",
    "PHI_DUAL",
    "SelmerGroup2",
    "enumerate_QS2",
    "bad_places",
    "space_for",
    "local_table",
    "selmer_group",
    "rank_upper_2descent",
    "sq_mul",
]

PHI = "phi"
PHI_DUAL = "phi_dual"


def sq_mul(d1: int, d2: int) -> int:
    """Product of square classes, reduced to its square-free representative."""
    return squarefree_part(d1 * d2)


def _class_key(d: int):
    return (abs(d), d < 0)


def bad_places(m: int) -> list[int]:
    """Finite primes of S: 2 and the odd primes dividing m."""
    return sorted({2} | set(factor(m)))


def enumerate_QS2(m: int) -> list[int]:
    """Square-free representatives of Q(S,2), ordered by |d| then sign."""
    if m == 0 or powerfree_part(m, 4)[1] != 1:
        raise ValueError(f"m = {m} must be nonzero and 4th-power-free")
    reps = [1]
    for p in bad_places(m):
        reps += [d * p for d in reps]
    reps += [-d for d in reps]
    return sorted(reps, key=_class_key)


def space_for(d: int, m: int, side: str) -> QuarticSpace:
    if side == PHI:
        return QuarticSpace(d, -4 * m)
    if side == PHI_DUAL:
        return QuarticSpace(d, m)
    raise ValueError(f"unknown side {side!r}")


@dataclass(frozen=True)
class SelmerGroup2:
    side: str
    m: int
    members: tuple[int, ...]

    def __post_init__(self):
        ms = set(self.members)
        if 1 not in ms:
            raise AssertionError("Selmer group lacks the identity")
        for d1 in ms:
            for d2 in ms:
                if sq_mul(d1, d2) not in ms:
                    raise AssertionError(f"not closed: {d1} * {d2}")
        image = squarefree_part(-4 * self.m) if self.side == PHI else squarefree_part(self.m)
        if image not in ms:
            raise AssertionError(f"torsion image {image} missing from {self.side} Selmer group")

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def dim(self) -> int:
        return self.order.bit_length() - 1

    def __contains__(self, d: int) -> bool:
        return squarefree_part(d) in self.members


def local_table(m: int, side: str, workers: int = 1) -> dict[int, dict[str, bool]]:
    """Local solvability of every class at every place of S.

    Keys of the inner dict are ``"inf"`` and the primes as strings.
    """
    classes = enumerate_QS2(m)
    places = bad_places(m)

    def row(d):
        space = space_for(d, m, side)
        out = {"inf": quartic_solvable_real(space)}
        for p in places:
            out[str(p)] = quartic_solvable_padic(space, p)
        return d, out

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(row, classes))
    else:
        rows = [row(d) for d in classes]
    return dict(rows)


def selmer_group(m: int, side: str) -> SelmerGroup2:
    table = local_table(m, side)
    members = tuple(d for d, locs in table.items() if all(locs.values()))
    return SelmerGroup2(side, m, members)


def rank_upper_2descent(m: int) -> int:
    """dim Sel_phi + dim Sel_phi' - 2, an upper bound for the rank of E_m."""
    return selmer_group(m, PHI).dim + selmer_group(m, PHI_DUAL).dim - 2
