"""Exact arithmetic on integral lattices with a symmetric bilinear form.

Everything here works on Python ints, so there is no overflow and no
rounding. Matrices are plain tuples of tuples; vectors carry a reference
to the lattice they live in so that pairings across lattices are caught.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from operator import mul
from typing import Iterable, Sequence

Matrix = tuple[tuple[int, ...], ...]


class LatticeError(ValueError):
    pass


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise LatticeError("ragged matrix")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(map(mul, row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(map(mul, row, v)) for row in a)


def _content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive_part(v: Sequence[int]) -> tuple[int, ...]:
    g = _content(v)
    if g == 0:
        raise LatticeError("zero vector has no primitive part")
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class IntLattice:
    """Free abelian group of finite rank with an integral symmetric Gram matrix."""

    gram: Matrix
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        gram = as_matrix(self.gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise LatticeError("gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError(f"gram matrix not symmetric at ({i},{j})")
        labels = tuple(self.labels) or tuple(f"e{i + 1}" for i in range(n))
        if len(labels) != n:
            raise LatticeError("labels length must equal rank")
        if len(set(labels)) != n:
            raise LatticeError("labels must be distinct")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "labels", labels)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def vector(self, coords: Sequence[int]) -> LatticeVector:
        return LatticeVector(tuple(int(c) for c in coords), self)

    def zero(self) -> LatticeVector:
        return self.vector((0,) * self.rank)

    def basis(self) -> tuple[LatticeVector, ...]:
        return tuple(self.vector(row) for row in identity(self.rank))

    def __getitem__(self, label: str) -> LatticeVector:
        try:
            i = self.labels.index(label)
        except ValueError:
            raise LatticeError(f"unknown basis label {label!r}") from None
        return self.vector(identity(self.rank)[i])

    def span(self, generators: Iterable[LatticeVector | Sequence[int]]) -> SublatticeSpan:
        gens = tuple(g if isinstance(g, LatticeVector) else self.vector(g) for g in generators)
        return SublatticeSpan(self, gens)

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))


@dataclass(frozen=True)
class LatticeVector:
    coords: tuple[int, ...]
    ambient: IntLattice = field(repr=False)

    def __post_init__(self):
        if len(self.coords) != self.ambient.rank:
            raise LatticeError("vector/lattice rank mismatch")

    def _check(self, other: LatticeVector) -> None:
        if other.ambient != self.ambient:
            raise LatticeError("vectors live in different lattices")

    def __add__(self, other: LatticeVector) -> LatticeVector:
        self._check(other)
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)), self.ambient)

    def __sub__(self, other: LatticeVector) -> LatticeVector:
        self._check(other)
        return LatticeVector(tuple(a - b for a, b in zip(self.coords, other.coords)), self.ambient)

    def __neg__(self) -> LatticeVector:
        return LatticeVector(tuple(-a for a in self.coords), self.ambient)

    def __mul__(self, k: int) -> LatticeVector:
        return LatticeVector(tuple(k * a for a in self.coords), self.ambient)

    __rmul__ = __mul__

    def __iter__(self):
        return iter(self.coords)

    def dot(self, other: LatticeVector) -> int:
        return pairing(self.ambient, self, other)

    def square(self) -> int:
        return pairing(self.ambient, self, self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return format_class(self.coords, self.ambient.labels)


def format_class(coords: Sequence[int], labels: Sequence[str]) -> str:
    """Render integer coordinates as e.g. ``3D - E``; the zero class is ``0``."""
    out = ""
    for c, name in zip(coords, labels):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        if not out:
            out = ("-" if c < 0 else "") + mag + name
        else:
            out += (" - " if c < 0 else " + ") + mag + name
    return out or "0"


@dataclass(frozen=True)
class SublatticeSpan:
    """Subgroup of an ambient lattice spanned by (possibly dependent) generators."""

    ambient: IntLattice
    generators: tuple[LatticeVector, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.ambient != self.ambient:
                raise LatticeError("generators must share the ambient lattice")
        object.__setattr__(self, "generators", gens)

    @property
    def matrix(self) -> Matrix:
        """Generators as rows."""
        return tuple(g.coords for g in self.generators)

    @property
    def rank(self) -> int:
        if not self.generators:
            return 0
        _, s, _ = smith_normal_form(self.matrix)
        return sum(1 for i in range(min(len(s), len(s[0]))) if s[i][i])

    def gram(self) -> Matrix:
        return tuple(tuple(pairing(self.ambient, u, v) for v in self.generators) for u in self.generators)

    def basis(self) -> SublatticeSpan:
        """Same subgroup, with a linearly independent generating set."""
        if not self.generators:
            return self
        u, s, _ = smith_normal_form(self.matrix)
        r = sum(1 for i in range(min(len(s), len(s[0]))) if s[i][i])
        rows = matmul(u, self.matrix)[:r]
        return SublatticeSpan(self.ambient, tuple(self.ambient.vector(row) for row in rows))

    def index_in_saturation(self) -> int:
        if not self.generators:
            return 1
        _, s, _ = smith_normal_form(self.matrix)
        idx = 1
        for i in range(min(len(s), len(s[0]))):
            if s[i][i]:
                idx *= s[i][i]
        return idx

    def contains(self, v: LatticeVector) -> bool:
        if v.ambient != self.ambient:
            return False
        if v.is_zero():
            return True
        if not self.generators:
            return False
        extended = SublatticeSpan(self.ambient, self.generators + (v,))
        if extended.rank != self.rank:
            return False
        return extended.index_in_saturation() == self.index_in_saturation()

    def same_span(self, other: SublatticeSpan) -> bool:
        return (
            self.ambient == other.ambient
            and all(self.contains(g) for g in other.generators)
            and all(other.contains(g) for g in self.generators)
        )


def pairing(lattice: IntLattice, u: LatticeVector | Sequence[int], v: LatticeVector | Sequence[int]) -> int:
    cu = u.coords if isinstance(u, LatticeVector) else tuple(u)
    cv = v.coords if isinstance(v, LatticeVector) else tuple(v)
    n = lattice.rank
    if len(cu) != n or len(cv) != n:
        raise LatticeError("vector/lattice rank mismatch")
    for w in (u, v):
        if isinstance(w, LatticeVector) and w.ambient != lattice:
            raise LatticeError("vector does not belong to this lattice")
    g = lattice.gram
    return sum(cu[i] * g[i][j] * cv[j] for i in range(n) for j in range(n))


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination; every division is exact."""
    a = [list(row) for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise LatticeError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinant(lattice: IntLattice) -> int:
    return bareiss_det(lattice.gram)


def characteristic_polynomial(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Coefficients of det(xI - m), leading coefficient first (Faddeev-LeVerrier)."""
    n = len(m)
    coeffs = [1]
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A*M_{k-1} + c_{k-1} I
        prod = matmul(m, mk) if k > 1 else [[0] * n for _ in range(n)]
        mk = [[prod[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        am = matmul(m, mk)
        tr = sum(am[i][i] for i in range(n))
        assert tr % k == 0
        coeffs.append(-tr // k)
    return tuple(coeffs)


def _sign_changes(seq: Iterable[int]) -> int:
    signs = [x > 0 for x in seq if x]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(lattice: IntLattice) -> tuple[int, int, int]:
    """(positive, negative, null) directions of the form.

    The characteristic polynomial of a symmetric matrix has only real roots,
    so Descartes' rule of signs counts the positive and negative ones exactly.
    """
    coeffs = list(characteristic_polynomial(lattice.gram))
    null = 0
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
        null += 1
    deg = len(coeffs) - 1
    pos = _sign_changes(coeffs)
    neg = _sign_changes(c * (-1) ** (deg - i) for i, c in enumerate(coeffs))
    return pos, neg, null


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, S, V) with U*M*V = S diagonal, d_i | d_{i+1}, U and V unimodular."""
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        for mat in (a, u):
            mat[dst] = [x + q * y for x, y in zip(mat[dst], mat[src])]

    def add_col(dst, src, q):
        for mat in (a, v):
            for row in mat:
                row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return as_matrix(u), as_matrix(a), as_matrix(v)


def invariant_factors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    if not m:
        return ()
    _, s, _ = smith_normal_form(m)
    return tuple(s[i][i] for i in range(min(len(s), len(s[0]))) if s[i][i])


def integer_kernel(m: Sequence[Sequence[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    """Basis of {x in Z^ncols : m x = 0}; the result is always saturated."""
    if not m:
        return identity(ncols)
    _, s, v = smith_normal_form(m)
    r = sum(1 for i in range(min(len(s), ncols)) if s[i][i])
    vt = transpose(v)
    return tuple(vt[j] for j in range(r, ncols))


def saturate(span: SublatticeSpan) -> SublatticeSpan:
    """(Q-span of the generators) intersected with the ambient lattice."""
    n = span.ambient.rank
    # Q-span = annihilator of the right kernel; its integer points form a kernel again.
    ker = integer_kernel(span.matrix, n) if span.generators else identity(n)
    sat = integer_kernel(ker, n)
    return SublatticeSpan(span.ambient, tuple(span.ambient.vector(c) for c in sat))


def is_primitive(span: SublatticeSpan) -> bool:
    return span.index_in_saturation() == 1


def orthogonal_complement(span: SublatticeSpan) -> SublatticeSpan:
    amb = span.ambient
    if determinant(amb) == 0:
        raise LatticeError("ambient lattice degenerate")
    rows = matmul(span.matrix, amb.gram) if span.generators else ()
    ker = integer_kernel(rows, amb.rank)
    return SublatticeSpan(amb, tuple(amb.vector(c) for c in ker))


def change_of_basis(lattice: IntLattice, b: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> IntLattice:
    """New lattice whose i-th basis vector is column i of ``b``: gram' = B^T G B."""
    b = as_matrix(b)
    n = lattice.rank
    if len(b) != n or any(len(row) != n for row in b):
        raise LatticeError(f"change of basis must be {n}x{n}")
    if labels is None:
        labels = tuple(format_class(col, lattice.labels) for col in transpose(b))
        if len(set(labels)) != n:
            labels = tuple(f"f{i + 1}" for i in range(n))
    return IntLattice(matmul(matmul(transpose(b), lattice.gram), b), tuple(labels))


def dual_cone_rank2(lattice: IntLattice, gens: Sequence[LatticeVector]) -> tuple[LatticeVector, LatticeVector]:
    """Primitive ray generators of {v : (v, g) >= 0 for both g in gens}.

    The first output ray is orthogonal to gens[0], the second to gens[1].
    """
    if lattice.rank != 2:
        raise LatticeError("dual_cone_rank2 needs a rank 2 lattice")
    if len(gens) != 2:
        raise LatticeError("dual_cone_rank2 needs exactly two generators")
    g0, g1 = gens
    if g0.coords[0] * g1.coords[1] - g0.coords[1] * g1.coords[0] == 0:
        raise LatticeError("cone generators are linearly dependent")
    rays = []
    for g, other in ((g0, g1), (g1, g0)):
        a, b = matvec(lattice.gram, g.coords)
        if a == 0 and b == 0:
            raise LatticeError("generator lies in the radical of the form")
        ray = lattice.vector(primitive_part((-b, a)))
        side = pairing(lattice, ray, other)
        if side == 0:
            raise LatticeError("degenerate form: dual cone is not two-dimensional")
        rays.append(ray if side > 0 else -ray)
    return rays[0], rays[1]
