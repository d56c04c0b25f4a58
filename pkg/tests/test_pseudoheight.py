import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mukailab.pseudoheight import (
    INF,
    ExtDegreeTable,
    PseudoheightError,
    connectedness_verdict,
    pseudoheight,
    pseudoheight_bruteforce,
    table_from_json,
    table_to_json,
)

FANO = {"n": 2, "rel_dim": 3, "e_plain": {"1,2": 0}, "e_serre": {"1,1": 3, "2,2": 3, "2,1": 3}}


def test_infinity_token():
    assert INF + 3 is INF and 3 + INF is INF
    assert min(INF, 10**9) == 10**9
    assert INF > 10**100 and not INF < 0
    assert INF == INF and INF != 10**100
    assert pickle.loads(pickle.dumps(INF)) is INF
    with pytest.raises(ArithmeticError):
        INF - INF


def test_single_object():
    assert pseudoheight(ExtDegreeTable(1, 2, {}, {(1, 1): 7})) == 7


@pytest.mark.parametrize("n, rel_dim", [(1, 3), (2, 3), (4, 5), (6, 2)])
def test_full_chain_is_minimal(n, rel_dim):
    plain = {(i, j): 0 for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    serre = {(j, i): rel_dim for i in range(1, n + 1) for j in range(i, n + 1)}
    assert pseudoheight(ExtDegreeTable(n, rel_dim, plain, serre)) == rel_dim - (n - 1)


def test_all_chains_cut():
    t = ExtDegreeTable(3, 2, {(1, 2): 0, (2, 3): 1}, {})
    assert pseudoheight(t) is INF
    assert pseudoheight_bruteforce(t) is INF


def test_verdict_examples():
    v = connectedness_verdict(2, 3, 2)
    assert (v.iso_range_max, v.injection_at, v.connected_by_criterion) == (0, 1, True)
    assert not connectedness_verdict(2, 3, 3).connected_by_criterion
    assert connectedness_verdict(INF, 1, 5).iso_range_max is INF


def test_fano_index_two():
    t = table_from_json(FANO)
    t.validate_sheaf_mode()
    ph = pseudoheight(t)
    assert ph == 2
    assert connectedness_verdict(ph, t.rel_dim, t.n).connected_by_criterion


def test_json_round_trip():
    data = dict(FANO, e_plain={"1,2": "inf"})
    t = table_from_json(data)
    assert t.plain(1, 2) is INF
    assert table_to_json(t) == {"n": 2, "rel_dim": 3, "e_plain": {"1,2": "inf"}, "e_serre": {"1,1": 3, "2,1": 3, "2,2": 3}}
    assert table_from_json(table_to_json(t)) == t


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"rel_dim": 3},
        {"n": 2, "rel_dim": "3"},
        {"n": 2, "rel_dim": 3, "e_plain": {"2,1": 0}},
        {"n": 2, "rel_dim": 3, "e_serre": {"1,2": 0}},
        {"n": 2, "rel_dim": 3, "e_plain": {"1-2": 0}},
        {"n": 2, "rel_dim": 3, "e_plain": {"1,2": 1.5}},
        {"n": 0, "rel_dim": 3},
    ],
)
def test_bad_tables(data):
    with pytest.raises(PseudoheightError):
        table_from_json(data)


def test_sheaf_mode_validation():
    with pytest.raises(PseudoheightError, match="sheaf mode"):
        ExtDegreeTable(2, 3, {(1, 2): -1}, {}).validate_sheaf_mode()
    with pytest.raises(PseudoheightError, match="sheaf mode"):
        ExtDegreeTable(2, 3, {}, {(1, 1): 2}).validate_sheaf_mode()


degree = st.one_of(st.integers(0, 5), st.just(INF))


@st.composite
def tables(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    plain = {(i, j): draw(degree) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    serre = {(j, i): draw(degree) for i in range(1, n + 1) for j in range(i, n + 1)}
    return ExtDegreeTable(n, draw(st.integers(0, 6)), plain, serre)


@given(tables())
def test_dp_matches_bruteforce(t):
    assert pseudoheight(t) == pseudoheight_bruteforce(t)


@given(tables(), st.data())
def test_monotone_in_each_entry(t, data):
    before = pseudoheight(t)
    which = data.draw(st.sampled_from(["plain", "serre"]) if t.e_plain else st.just("serre"))
    table = dict(t.e_plain if which == "plain" else t.e_serre)
    key = data.draw(st.sampled_from(sorted(table)))
    bump = data.draw(st.one_of(st.integers(1, 4), st.just(INF)))
    table[key] = table[key] + bump
    new = ExtDegreeTable(t.n, t.rel_dim, table if which == "plain" else t.e_plain, table if which == "serre" else t.e_serre)
    assert pseudoheight(new) >= before


@given(st.integers(1, 6), st.integers(0, 8), st.data())
def test_sheaf_bound(n, rel_dim, data):
    plain = {(i, j): data.draw(st.integers(0, 4)) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    serre = {(j, i): rel_dim + data.draw(st.integers(0, 4)) for i in range(1, n + 1) for j in range(i, n + 1)}
    t = ExtDegreeTable(n, rel_dim, plain, serre)
    t.validate_sheaf_mode()
    assert pseudoheight(t) >= rel_dim - n + 1
