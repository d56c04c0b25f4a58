"""Cohomological shadows of autoequivalences of a K3 surface.

An isometry is an integer matrix acting on column vectors in the basis
(r, Picard basis, s) of the algebraic Mukai lattice, together with the
sign by which it acts on the transcendental part. ``compose(f, g)`` is
f after g, matching the usual notation f o g.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lattice import (
    LatticeError,
    Matrix,
    SublatticeSpan,
    identity,
    integer_kernel,
    matmul,
    matvec,
    transpose,
)
from .mukai import K3Model, MukaiError, MukaiVector, algebraic_mukai_lattice, line_bundle_vector, mukai_pairing


class IsometryError(ValueError):
    pass


@dataclass(frozen=True)
class MukaiIsometry:
    model: K3Model
    matrix: Matrix
    transcendental_sign: int = 1

    def __post_init__(self):
        n = self.model.mukai_rank
        mat = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(mat) != n or any(len(row) != n for row in mat):
            raise IsometryError(f"isometry matrix must be {n}x{n}")
        if self.transcendental_sign not in (1, -1):
            raise IsometryError("transcendental sign must be +1 or -1")
        g = algebraic_mukai_lattice(self.model).gram
        if matmul(matmul(transpose(mat), g), mat) != g:
            raise IsometryError("matrix does not preserve the Mukai pairing")
        object.__setattr__(self, "matrix", mat)

    def __call__(self, v: MukaiVector) -> MukaiVector:
        return self.model.vector_from_coords(matvec(self.matrix, v.coords))

    def __matmul__(self, other: MukaiIsometry) -> MukaiIsometry:
        return compose(self, other)


def _check_same(f: MukaiIsometry, g: MukaiIsometry) -> None:
    if f.model != g.model:
        raise IsometryError("isometries act on different models")


def identity_isometry(m: K3Model) -> MukaiIsometry:
    return MukaiIsometry(m, identity(m.mukai_rank), 1)


def spherical_twist(m: K3Model, v: MukaiVector) -> MukaiIsometry:
    """Reflection w -> w + v (v, w) in a (-2)-class."""
    if mukai_pairing(m, v, v) != -2:
        raise IsometryError(f"(v,v) != -2 for twist class {v}")
    g = algebraic_mukai_lattice(m).gram
    gv = matvec(g, v.coords)
    n = m.mukai_rank
    mat = tuple(tuple(int(i == j) + v.coords[i] * gv[j] for j in range(n)) for i in range(n))
    return MukaiIsometry(m, mat, 1)


def tensor_line_bundle(m: K3Model, c1) -> MukaiIsometry:
    """Multiplication by ch(L): (r, c, s) -> (r, c + r c1, s + c.c1 + r c1^2/2)."""
    if c1.ambient != m.picard:
        raise IsometryError("class does not belong to this model")
    rho = m.rho
    n = rho + 2
    half_sq = line_bundle_vector(m, c1).s - 1
    pc = matvec(m.picard.gram, c1.coords)
    mat = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(rho):
        mat[k + 1][0] = c1.coords[k]
    mat[n - 1][0] = half_sq
    for k in range(rho):
        mat[n - 1][k + 1] = pc[k]
    return MukaiIsometry(m, mat, 1)


def shift(m: K3Model) -> MukaiIsometry:
    n = m.mukai_rank
    return MukaiIsometry(m, tuple(tuple(-int(i == j) for j in range(n)) for i in range(n)), -1)


def _product(model: K3Model, matrix: Matrix, sign: int) -> MukaiIsometry:
    # products of checked isometries are isometries; skip the O(n^3) re-check
    f = object.__new__(MukaiIsometry)
    object.__setattr__(f, "model", model)
    object.__setattr__(f, "matrix", matrix)
    object.__setattr__(f, "transcendental_sign", sign)
    return f


def compose(f: MukaiIsometry, g: MukaiIsometry) -> MukaiIsometry:
    _check_same(f, g)
    return _product(f.model, matmul(f.matrix, g.matrix), f.transcendental_sign * g.transcendental_sign)


def compose_all(m: K3Model, maps: Sequence[MukaiIsometry]) -> MukaiIsometry:
    """maps[0] o maps[1] o ... o maps[-1]."""
    out = identity_isometry(m)
    for f in maps:
        out = compose(out, f)
    return out


def inverse(f: MukaiIsometry) -> MukaiIsometry:
    # M^T G M = G gives M^-1 = G^-1 M^T G; solve G X = M^T G exactly
    g = algebraic_mukai_lattice(f.model).gram
    n = len(g)
    rhs = matmul(transpose(f.matrix), g)
    aug = [[Fraction(x) for x in g[i]] + [Fraction(x) for x in rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                q = aug[r][col]
                aug[r] = [x - q * y for x, y in zip(aug[r], aug[col])]
    inv = []
    for r in range(n):
        row = aug[r][n:]
        if any(x.denominator != 1 for x in row):
            raise IsometryError("isometry is not invertible over the integers")
        inv.append([int(x) for x in row])
    return MukaiIsometry(f.model, inv, f.transcendental_sign)


def conjugate(f: MukaiIsometry, by: MukaiIsometry) -> MukaiIsometry:
    """by^-1 o f o by."""
    return compose(inverse(by), compose(f, by))


def equals(f: MukaiIsometry, g: MukaiIsometry) -> bool:
    return f.model == g.model and f.matrix == g.matrix and f.transcendental_sign == g.transcendental_sign


def is_involution(f: MukaiIsometry) -> bool:
    return matmul(f.matrix, f.matrix) == identity(f.model.mukai_rank)


def power(f: MukaiIsometry, k: int) -> MukaiIsometry:
    base = f if k >= 0 else inverse(f)
    out = identity_isometry(f.model)
    for _ in range(abs(k)):
        out = compose(out, base)
    return out


def _eigenlattice(f: MukaiIsometry, eigenvalue: int) -> SublatticeSpan:
    if not is_involution(f):
        raise IsometryError("eigenlattices are only defined here for involutions")
    n = f.model.mukai_rank
    lat = algebraic_mukai_lattice(f.model)
    rows = tuple(tuple(f.matrix[i][j] - eigenvalue * int(i == j) for j in range(n)) for i in range(n))
    ker = integer_kernel(rows, n)
    return SublatticeSpan(lat, tuple(lat.vector(c) for c in ker))


def invariant_sublattice(f: MukaiIsometry) -> SublatticeSpan:
    return _eigenlattice(f, 1)


def anti_invariant_sublattice(f: MukaiIsometry) -> SublatticeSpan:
    return _eigenlattice(f, -1)


# -- words -------------------------------------------------------------------

_TUPLE = re.compile(r"^\((.*)\)$")


def parse_token(m: K3Model, token: str) -> MukaiIsometry:
    from .formats import parse_class, parse_mukai_vector

    tok = token.strip()
    if tok == "shift":
        return shift(m)
    if tok.startswith("tw:"):
        body = tok[3:]
        if body.startswith("O(") and body.endswith(")"):
            v = line_bundle_vector(m, parse_class(m.picard, body[2:-1]))
        elif _TUPLE.match(body):
            v = parse_mukai_vector(m, body)
        else:
            try:
                v = m.registered(body)
            except MukaiError as exc:
                raise IsometryError(str(exc)) from None
        return spherical_twist(m, v)
    if tok.startswith("lb:"):
        return tensor_line_bundle(m, parse_class(m.picard, tok[3:]))
    raise IsometryError(f"unknown token {token!r}")


def tokenize_word(word: str) -> list[str]:
    # whitespace separates tokens, except inside parentheses
    tokens, depth, cur = [], 0, ""
    for ch in word:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch.isspace() and depth == 0:
            if cur:
                tokens.append(cur)
            cur = ""
        else:
            cur += ch
    if depth:
        raise IsometryError("unbalanced parentheses in word")
    if cur:
        tokens.append(cur)
    return tokens


def build_named(m: K3Model, word: Sequence[str] | str) -> MukaiIsometry:
    """Compose generator tokens right to left, like functional notation."""
    tokens = tokenize_word(word) if isinstance(word, str) else list(word)
    try:
        return compose_all(m, [parse_token(m, t) for t in tokens])
    except LatticeError as exc:
        raise IsometryError(str(exc)) from None
