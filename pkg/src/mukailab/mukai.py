"""Numerical K3 surfaces: Picard lattice, Mukai vectors and the Mukai pairing.

A Mukai vector (r, c1, s) lives in the algebraic part H^0 + Pic + H^4 of the
Mukai lattice. In coordinates it is the flat tuple (r, *c1.coords, s), which
is the basis used by :func:`algebraic_mukai_lattice` and by every isometry
matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lattice import IntLattice, LatticeError, LatticeVector, format_class, pairing


class MukaiError(ValueError):
    pass


@dataclass(frozen=True)
class K3Model:
    picard: IntLattice
    polarization: LatticeVector
    name: str = ""
    # registered spherical classes beyond O, keyed by token name (e.g. "U")
    spherical: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        if not self.picard.is_even():
            raise MukaiError("K3 Picard lattice must be even")
        if self.polarization.ambient != self.picard:
            raise MukaiError("polarization must lie in the Picard lattice")
        if self.polarization.square() <= 0:
            raise MukaiError("polarization must have positive square")
        for key, coords in self.spherical:
            v = self.vector_from_coords(coords)
            if mukai_pairing(self, v, v) != -2:
                raise MukaiError(f"registered class {key} is not spherical")

    @property
    def rho(self) -> int:
        return self.picard.rank

    @property
    def mukai_rank(self) -> int:
        return self.picard.rank + 2

    def cls(self, coords) -> LatticeVector:
        return self.picard.vector(coords)

    def vector(self, r: int, c1, s: int) -> MukaiVector:
        if not isinstance(c1, LatticeVector):
            c1 = self.picard.zero() if c1 == 0 else self.picard.vector(c1)
        return MukaiVector(int(r), c1, int(s))

    def vector_from_coords(self, coords) -> MukaiVector:
        coords = tuple(int(x) for x in coords)
        if len(coords) != self.mukai_rank:
            raise MukaiError(f"expected {self.mukai_rank} Mukai coordinates, got {len(coords)}")
        return MukaiVector(coords[0], self.picard.vector(coords[1:-1]), coords[-1])

    def registered(self, key: str) -> MukaiVector:
        if key == "O":
            return line_bundle_vector(self, self.picard.zero())
        for name, coords in self.spherical:
            if name == key:
                return self.vector_from_coords(coords)
        raise MukaiError(f"model {self.name or '?'} has no registered class {key!r}")

    def with_spherical(self, key: str, v: MukaiVector) -> K3Model:
        extra = tuple(p for p in self.spherical if p[0] != key) + ((key, v.coords),)
        return K3Model(self.picard, self.polarization, self.name, extra)


@dataclass(frozen=True)
class MukaiVector:
    r: int
    c1: LatticeVector
    s: int

    @property
    def coords(self) -> tuple[int, ...]:
        return (self.r, *self.c1.coords, self.s)

    def __add__(self, other: MukaiVector) -> MukaiVector:
        return MukaiVector(self.r + other.r, self.c1 + other.c1, self.s + other.s)

    def __sub__(self, other: MukaiVector) -> MukaiVector:
        return MukaiVector(self.r - other.r, self.c1 - other.c1, self.s - other.s)

    def __neg__(self) -> MukaiVector:
        return MukaiVector(-self.r, -self.c1, -self.s)

    def __mul__(self, k: int) -> MukaiVector:
        return MukaiVector(k * self.r, self.c1 * k, k * self.s)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"({self.r}, {format_class(self.c1.coords, self.c1.ambient.labels)}, {self.s})"


def _check_model(m: K3Model, *vs: MukaiVector) -> None:
    for v in vs:
        if v.c1.ambient != m.picard:
            raise MukaiError("Mukai vector does not belong to this model")


def mukai_pairing(m: K3Model, v: MukaiVector, w: MukaiVector) -> int:
    _check_model(m, v, w)
    return pairing(m.picard, v.c1, w.c1) - v.r * w.s - w.r * v.s


def mukai_square(m: K3Model, v: MukaiVector) -> int:
    return mukai_pairing(m, v, v)


def euler_characteristic(m: K3Model, v: MukaiVector, w: MukaiVector) -> int:
    return -mukai_pairing(m, v, w)


def line_bundle_vector(m: K3Model, c1: LatticeVector) -> MukaiVector:
    if c1.ambient != m.picard:
        raise MukaiError("class does not belong to this model")
    sq = c1.square()
    if sq % 2:
        raise MukaiError(f"odd self-intersection {sq} on a K3 Picard lattice")
    return MukaiVector(1, c1, sq // 2 + 1)


def slope(m: K3Model, a: LatticeVector, v: MukaiVector) -> Fraction:
    _check_model(m, v)
    a2 = a.square()
    if v.r == 0 or a2 == 0:
        raise MukaiError("slope undefined")
    return Fraction(pairing(m.picard, a, v.c1), a2 * v.r)


@lru_cache(maxsize=256)
def algebraic_mukai_lattice(m: K3Model) -> IntLattice:
    """H^0 + Pic + H^4 with the Mukai pairing, basis (r, Picard basis, s)."""
    rho = m.rho
    n = rho + 2
    g = [[0] * n for _ in range(n)]
    g[0][n - 1] = g[n - 1][0] = -1
    for i in range(rho):
        for j in range(rho):
            g[i + 1][j + 1] = m.picard.gram[i][j]
    labels = ("r", *m.picard.labels, "s")
    if len(set(labels)) != n:
        raise LatticeError("Picard labels clash with the reserved names r, s")
    return IntLattice(g, labels)


def _rank1(name: str, label: str, degree: int) -> K3Model:
    pic = IntLattice(((degree,),), (label,))
    return K3Model(pic, pic[label], name)


def quartic_branch() -> K3Model:
    """Branch quartic of a quartic double solid, Picard lattice <4> spanned by A."""
    return _rank1("quartic_branch", "A", 4)


def gm_surface() -> K3Model:
    """Picard rank one GM K3 surface with Pluecker polarization B, B^2 = 10."""
    m = _rank1("gm_surface", "B", 10)
    return m.with_spherical("U", m.vector(2, -m.picard["B"], 3))


def quartic_with_line() -> K3Model:
    """Quartic containing a line: basis D (hyperplane), E (elliptic fibre)."""
    pic = IntLattice(((4, 3), (3, 0)), ("D", "E"))
    m = K3Model(pic, pic["D"], "quartic_with_line")
    return m.with_spherical("U", m.vector(2, -pic["D"] - pic["E"], 3))


MODELS = {
    "quartic_branch": quartic_branch,
    "gm_surface": gm_surface,
    "quartic_with_line": quartic_with_line,
}


def named_model(name: str) -> K3Model:
    try:
        return MODELS[name]()
    except KeyError:
        raise MukaiError(f"unknown model {name!r}; choose from {sorted(MODELS)}") from None
