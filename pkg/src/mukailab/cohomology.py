"""Cohomology of finite cyclic groups with trivially acting coefficients.

Coefficient groups are modelled as Z^r + (finite part) + optionally the
unit group of an algebraically closed field of characteristic zero. The
latter is divisible and has m-torsion Z/m for every m, which is all that
enters the computation.

For G = Z/m acting trivially on A:

    H^0 = A,   H^odd = A[m],   H^even = A/mA  (even degree >= 2)
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .lattice import invariant_factors


class CohomologyError(ValueError):
    pass


def invariant_form(orders) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of a direct sum of cyclic groups Z/n."""
    orders = [int(n) for n in orders]
    if any(n < 1 for n in orders):
        raise CohomologyError("cyclic orders must be positive")
    diag = [[n if i == j else 0 for j in range(len(orders))] for i, n in enumerate(orders)]
    return tuple(d for d in invariant_factors(diag) if d > 1)


@dataclass(frozen=True)
class AbelianGroupModel:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()
    divisible_units: bool = False

    def __post_init__(self):
        if self.free_rank < 0:
            raise CohomologyError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", invariant_form(self.torsion))

    def __add__(self, other: AbelianGroupModel) -> AbelianGroupModel:
        if self.divisible_units and other.divisible_units:
            # two copies of the field units: not needed anywhere, refuse instead of guessing
            raise CohomologyError("only one copy of the field unit group is modelled")
        return AbelianGroupModel(
            self.free_rank + other.free_rank,
            self.torsion + other.torsion,
            self.divisible_units or other.divisible_units,
        )

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion and not self.divisible_units

    def __str__(self) -> str:
        parts = []
        if self.divisible_units:
            parts.append("Cx")
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


TRIVIAL = AbelianGroupModel()
FIELD_UNITS = AbelianGroupModel(divisible_units=True)
INTEGERS = AbelianGroupModel(free_rank=1)


def cyclic(n: int) -> AbelianGroupModel:
    return AbelianGroupModel(torsion=(n,))


def _check_m(m: int) -> None:
    if m <= 0:
        raise CohomologyError(f"m must be >= 1, got {m}")


def m_torsion(a: AbelianGroupModel, m: int) -> AbelianGroupModel:
    _check_m(m)
    orders = [gcd(d, m) for d in a.torsion]
    if a.divisible_units:
        orders.append(m)
    return AbelianGroupModel(torsion=tuple(orders))


def mod_m_quotient(a: AbelianGroupModel, m: int) -> AbelianGroupModel:
    _check_m(m)
    orders = [m] * a.free_rank + [gcd(d, m) for d in a.torsion]
    return AbelianGroupModel(torsion=tuple(orders))


def cyclic_cohomology(m: int, n: int, a: AbelianGroupModel) -> AbelianGroupModel:
    """H^n(Z/m, A) for the trivial action."""
    if m < 2:
        raise CohomologyError(f"group order must be >= 2, got {m}")
    if n < 0:
        raise CohomologyError("cohomological degree must be nonnegative")
    if n == 0:
        return a
    return m_torsion(a, m) if n % 2 else mod_m_quotient(a, m)


_SUMMAND = re.compile(r"^(?:(Cx|C\^x|C\*|k\^x|kx)|Z(?:\^(\d+))?|Z/(\d+))$")


def parse_coefficients(text: str) -> AbelianGroupModel:
    """Parse sums like ``Cx+Z``, ``Z^2 + Z/4``, ``0``."""
    total = TRIVIAL
    pieces = [p.strip() for p in text.replace("⊕", "+").split("+")]
    if not text.strip() or any(not p for p in pieces):
        raise CohomologyError(f"empty summand in coefficient group {text!r}")
    for piece in pieces:
        if piece == "0":
            continue
        m = _SUMMAND.match(piece.replace(" ", ""))
        if m is None:
            raise CohomologyError(f"cannot parse summand {piece!r} (use Cx, Z, Z^r, Z/d)")
        units, rank, order = m.groups()
        if units:
            total = total + FIELD_UNITS
        elif order is not None:
            if int(order) < 1:
                raise CohomologyError(f"bad cyclic order in {piece!r}")
            total = total + cyclic(int(order))
        else:
            total = total + AbelianGroupModel(free_rank=int(rank) if rank else 1)
    return total
