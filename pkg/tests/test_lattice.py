import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix as SymMatrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from mukailab.lattice import (
    IntLattice,
    LatticeError,
    bareiss_det,
    change_of_basis,
    determinant,
    dual_cone_rank2,
    identity,
    integer_kernel,
    is_primitive,
    matmul,
    orthogonal_complement,
    pairing,
    saturate,
    signature,
    smith_normal_form,
)
from mukailab.scenarios import laplace_det

PIC = IntLattice(((4, 3), (3, 0)), ("D", "E"))
L_YBR = IntLattice(((2, 0, -1), (0, 2, -1), (-1, -1, 0)))


@st.composite
def sym_matrices(draw, max_rank=4, bound=20):
    n = draw(st.integers(1, max_rank))
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = draw(st.integers(-bound, bound))
    return a


@st.composite
def unimodular(draw, n):
    m = [list(r) for r in identity(n)]
    for _ in range(draw(st.integers(0, 6))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i != j:
            k = draw(st.integers(-3, 3))
            m = [[m[r][c] + (k * m[j][c] if r == i else 0) for c in range(n)] for r in range(n)]
    return m


# -- pairing -----------------------------------------------------------------


def test_pairing_picard():
    D, E = PIC["D"], PIC["E"]
    assert pairing(PIC, D, D) == 4
    assert pairing(PIC, D + E, D + E) == 10
    assert pairing(PIC, PIC.zero(), D - 3 * E) == 0


def test_pairing_rank_mismatch():
    with pytest.raises(LatticeError, match="vector/lattice rank mismatch"):
        pairing(PIC, (1, 0, 0), (1, 0))


def test_gram_must_be_symmetric():
    with pytest.raises(LatticeError):
        IntLattice(((1, 2), (3, 4)))


@given(sym_matrices(), st.data())
def test_pairing_symmetric_bilinear(g, data):
    lat = IntLattice(g)
    vec = st.lists(st.integers(-20, 20), min_size=lat.rank, max_size=lat.rank)
    u, v, w = (lat.vector(data.draw(vec)) for _ in range(3))
    k = data.draw(st.integers(-5, 5))
    assert pairing(lat, u, v) == pairing(lat, v, u)
    assert pairing(lat, u + k * w, v) == pairing(lat, u, v) + k * pairing(lat, w, v)


# -- determinant ---------------------------------------------------------------


@pytest.mark.parametrize(
    "gram, det",
    [
        (((2, 0), (0, 2)), 4),
        (((2, 0, -1), (0, 2, -1), (-1, -1, 0)), -4),
        # cofactor expansion by hand: 2(0-4) - 0 + (-1)(0+2) = -10
        (((2, 0, -1), (0, 2, -2), (-1, -2, 0)), -10),
        (((4, 3), (3, 0)), -9),
    ],
)
def test_determinant_examples(gram, det):
    assert determinant(IntLattice(gram)) == det


def test_bareiss_needs_pivoting():
    assert bareiss_det(((0, 1), (1, 0))) == -1
    assert bareiss_det(((0, 0), (0, 5))) == 0


@given(sym_matrices(max_rank=5))
def test_bareiss_matches_cofactor_oracle(g):
    assert bareiss_det(g) == laplace_det(g)


@given(sym_matrices(max_rank=4, bound=6), st.data())
def test_determinant_under_change_of_basis(g, data):
    lat = IntLattice(g)
    n = lat.rank
    b = data.draw(unimodular(n))
    assert determinant(change_of_basis(lat, b)) == determinant(lat)
    b2 = [row[:] for row in b]
    b2[0] = [3 * x for x in b2[0]]
    assert determinant(change_of_basis(lat, b2)) == 9 * determinant(lat)


# -- signature -------------------------------------------------------------------


@pytest.mark.parametrize(
    "gram, sig",
    [
        (((2, 0), (0, 2)), (2, 0, 0)),
        (((2, 0, -1), (0, 2, -1), (-1, -1, 0)), (2, 1, 0)),
        (((0, 1), (1, 0)), (1, 1, 0)),
        (((0, 0), (0, 0)), (0, 0, 2)),
        (((4, 3), (3, 0)), (1, 1, 0)),
    ],
)
def test_signature_examples(gram, sig):
    assert signature(IntLattice(gram)) == sig


@given(sym_matrices(max_rank=4, bound=10))
def test_signature_matches_float_eigenvalues(g):
    lat = IntLattice(g)
    ev = np.linalg.eigvalsh(np.array(g, dtype=float))
    tol = 1e-7
    # skip near-singular inputs where the float oracle cannot decide
    if np.any((np.abs(ev) > tol) & (np.abs(ev) < 1e-3)):
        return
    expected = (int(np.sum(ev > tol)), int(np.sum(ev < -tol)), int(np.sum(np.abs(ev) <= tol)))
    if expected[2] and determinant(lat) != 0:
        return
    assert signature(lat) == expected


@given(sym_matrices(max_rank=4, bound=6), st.data())
def test_signature_invariant_under_unimodular_change(g, data):
    lat = IntLattice(g)
    sig = signature(lat)
    assert sum(sig) == lat.rank
    assert signature(change_of_basis(lat, data.draw(unimodular(lat.rank)))) == sig


# -- Smith normal form ------------------------------------------------------------


def test_snf_examples():
    assert smith_normal_form(((2, 0), (0, 2)))[1] == ((2, 0), (0, 2))
    assert smith_normal_form(((2, 0), (0, 1)))[1] == ((1, 0), (0, 2))
    u, s, v = smith_normal_form(((0, 0), (0, 0)))
    assert s == ((0, 0), (0, 0))
    assert u == identity(2) and v == identity(2)


@given(
    st.integers(1, 4).flatmap(
        lambda r: st.integers(1, 4).flatmap(
            lambda c: st.lists(st.lists(st.integers(-30, 30), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
)
def test_snf_reconstruction_and_divisibility(m):
    u, s, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == s
    assert abs(bareiss_det(u)) == 1 and abs(bareiss_det(v)) == 1
    diag = [s[i][i] for i in range(min(len(s), len(s[0])))]
    assert all(s[i][j] == 0 for i in range(len(s)) for j in range(len(s[0])) if i != j)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    oracle = sympy_snf(SymMatrix(m))
    assert [abs(oracle[i, i]) for i in range(len(diag))] == diag


def test_integer_kernel_is_saturated():
    ker = integer_kernel(((2, 4, 6),), 3)
    assert len(ker) == 2
    lat = IntLattice(identity(3))
    assert is_primitive(lat.span(ker))


# -- complement / saturation --------------------------------------------------------


def test_complement_in_l_ybr():
    e1, e2, _ = L_YBR.basis()
    comp = orthogonal_complement(L_YBR.span([e1, e2]))
    assert [g.coords for g in comp.generators] in ([(1, 1, 2)], [(-1, -1, -2)])
    assert comp.gram() == ((-4,),)


def test_complement_trivial_cases():
    assert orthogonal_complement(L_YBR.span(L_YBR.basis())).generators == ()
    assert orthogonal_complement(L_YBR.span([])).rank == 3


def test_complement_degenerate_ambient():
    lat = IntLattice(((1, 1), (1, 1)))
    with pytest.raises(LatticeError, match="ambient lattice degenerate"):
        orthogonal_complement(lat.span([(1, 0)]))


def test_saturation_examples():
    z = IntLattice(((1,),))
    s = z.span([(2,)])
    assert not is_primitive(s)
    assert [g.coords for g in saturate(s).generators] in ([(1,)], [(-1,)])

    D, E = PIC["D"], PIC["E"]
    span = PIC.span([D + E, D - E])
    assert span.index_in_saturation() == 2
    assert saturate(span).same_span(PIC.span(PIC.basis()))
    # index^2 = |det span| / |det ambient| = 36 / 9
    assert abs(bareiss_det(span.gram())) == 4 * abs(determinant(PIC))

    r3 = IntLattice(identity(3))
    assert is_primitive(r3.span([(1, -1, 1), (1, 0, -1)]))


@given(sym_matrices(max_rank=4, bound=5), st.data())
def test_complement_properties(g, data):
    lat = IntLattice(g)
    if determinant(lat) == 0:
        return
    n = lat.rank
    k = data.draw(st.integers(0, n))
    gens = [lat.vector(data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))) for _ in range(k)]
    comp = orthogonal_complement(lat.span(gens))
    assert is_primitive(comp)
    assert all(pairing(lat, c, x) == 0 for c in comp.generators for x in gens)
    assert comp.rank + lat.span(gens).rank == n


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=0, max_size=4)))
def test_saturate_idempotent_and_contains(rows):
    n = len(rows[0]) if rows else 2
    lat = IntLattice(identity(n))
    span = lat.span(rows)
    sat = saturate(span)
    assert saturate(sat).same_span(sat)
    assert all(sat.contains(g) for g in span.generators)
    assert sat.rank == span.rank
    assert is_primitive(sat)


# -- change of basis -------------------------------------------------------------------


def test_change_of_basis_examples():
    assert change_of_basis(PIC, ((1, 0), (1, 1))).gram == ((10, 3), (3, 0))
    assert change_of_basis(PIC, identity(2)).gram == PIC.gram
    assert change_of_basis(PIC, ((1, 0), (0, -1))).gram == ((4, -3), (-3, 0))
    with pytest.raises(LatticeError):
        change_of_basis(PIC, ((1, 0, 0),))


# -- rank-2 dual cones ----------------------------------------------------------------


def _brute_dual_rays(lat, gens, height=10):
    """Primitive vectors of height <= 10 in the dual cone lying on its boundary."""
    from math import gcd

    rays = []
    for x in range(-height, height + 1):
        for y in range(-height, height + 1):
            if (x, y) == (0, 0) or gcd(x, y) != 1:
                continue
            v = lat.vector((x, y))
            p = [pairing(lat, v, g) for g in gens]
            if min(p) >= 0 and 0 in p:
                rays.append((x, y))
    return rays


def test_dual_cone_nef():
    D, E = PIC["D"], PIC["E"]
    a, b = dual_cone_rank2(PIC, (E, D - E))
    assert (a.coords, b.coords) == ((0, 1), (3, -1))


def test_dual_cone_euclidean_examples():
    euc = IntLattice(identity(2))
    e1, e2 = euc.basis()
    a, b = dual_cone_rank2(euc, (e1, e2))
    # first ray is orthogonal to the first generator
    assert (a.coords, b.coords) == ((0, 1), (1, 0))
    a, b = dual_cone_rank2(euc, (e1, e1 + e2))
    assert (a.coords, b.coords) == ((0, 1), (1, -1))
    assert sorted([a.coords, b.coords]) == sorted(_brute_dual_rays(euc, (e1, e1 + e2)))


def test_dual_cone_dependent():
    euc = IntLattice(identity(2))
    e1, _ = euc.basis()
    with pytest.raises(LatticeError):
        dual_cone_rank2(euc, (e1, 2 * e1))


@given(sym_matrices(max_rank=2, bound=10).filter(lambda g: len(g) == 2), st.data())
def test_dual_cone_involutive_and_brute_force(g, data):
    lat = IntLattice(g)
    if determinant(lat) == 0:
        return
    vec = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
    g0, g1 = lat.vector(data.draw(vec)), lat.vector(data.draw(vec))
    if g0.coords[0] * g1.coords[1] - g0.coords[1] * g1.coords[0] == 0:
        return
    rays = dual_cone_rank2(lat, (g0, g1))
    assert all(pairing(lat, r, x) >= 0 for r in rays for x in (g0, g1))
    back = dual_cone_rank2(lat, rays)
    from mukailab.lattice import primitive_part

    assert {back[0].coords, back[1].coords} == {primitive_part(g0.coords), primitive_part(g1.coords)}
    height = max(max(map(abs, r.coords)) for r in rays)
    if height <= 12:
        assert set(_brute_dual_rays(lat, (g0, g1), height)) == {rays[0].coords, rays[1].coords}
