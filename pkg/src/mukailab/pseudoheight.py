"""Pseudoheight of an exceptional collection from its minimal Ext degrees.

For objects E_1..E_n the pseudoheight is the minimum, over increasing chains
a_0 < a_1 < ... < a_p, of

    e(a_0, a_1) + ... + e(a_{p-1}, a_p) + e_serre(a_p, a_0) - p

where e(i, j) is the lowest degree with Ext^k(E_i, E_j) != 0 and
e_serre(j, i) the same for (E_j, S^{-1} E_i). Missing Ext groups give +inf.
Indices are 1-based throughout, as in the JSON format.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Union


class _Infinity:
    """+inf for Ext degrees: absorbing under +, larger than every int."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("inf - inf")
        return self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("inf")

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
Degree = Union[int, _Infinity]


class PseudoheightError(ValueError):
    pass


@dataclass(frozen=True)
class ExtDegreeTable:
    n: int
    rel_dim: int
    e_plain: Mapping[tuple[int, int], Degree] = field(default_factory=dict)
    e_serre: Mapping[tuple[int, int], Degree] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise PseudoheightError("need at least one object")
        if self.rel_dim < 0:
            raise PseudoheightError("relative dimension must be nonnegative")
        for (i, j), v in self.e_plain.items():
            if not 1 <= i < j <= self.n:
                raise PseudoheightError(f"e_plain key {i},{j} must satisfy 1 <= i < j <= n")
            _check_degree(v, f"e_plain[{i},{j}]")
        for (j, i), v in self.e_serre.items():
            if not 1 <= i <= j <= self.n:
                raise PseudoheightError(f"e_serre key {j},{i} must satisfy 1 <= i <= j <= n")
            _check_degree(v, f"e_serre[{j},{i}]")
        object.__setattr__(self, "e_plain", dict(self.e_plain))
        object.__setattr__(self, "e_serre", dict(self.e_serre))

    def plain(self, i: int, j: int) -> Degree:
        """e(E_i, E_j) for i < j; absent entries mean the Ext groups vanish."""
        return self.e_plain.get((i, j), INF)

    def serre(self, j: int, i: int) -> Degree:
        """e(E_j, S^{-1} E_i) for i <= j."""
        return self.e_serre.get((j, i), INF)

    def validate_sheaf_mode(self) -> None:
        """Bounds that hold when every E_i is a locally free sheaf."""
        for key, v in self.e_plain.items():
            if v is not INF and v < 0:
                raise PseudoheightError(f"sheaf mode: e_plain{key} = {v} < 0")
        for key, v in self.e_serre.items():
            if v is not INF and v < self.rel_dim:
                raise PseudoheightError(f"sheaf mode: e_serre{key} = {v} < rel_dim {self.rel_dim}")


def _check_degree(v, where: str) -> None:
    if v is INF:
        return
    if isinstance(v, bool) or not isinstance(v, int):
        raise PseudoheightError(f"{where} must be an integer or inf, got {v!r}")


def pseudoheight(t: ExtDegreeTable) -> Degree:
    """Chain minimisation as a shortest path over (chain start, current object)."""
    n = t.n
    best = INF
    for a0 in range(1, n + 1):
        # cost[j]: cheapest e-sum minus chain length for chains a0 < ... < j
        cost: dict[int, Degree] = {a0: 0}
        for j in range(a0 + 1, n + 1):
            c = INF
            for i in range(a0, j):
                if cost[i] is INF:
                    continue
                step = t.plain(i, j)
                if step is INF:
                    continue
                c = min(c, cost[i] + step - 1)
            cost[j] = c
        for j in range(a0, n + 1):
            if cost[j] is INF:
                continue
            closing = t.serre(j, a0)
            if closing is INF:
                continue
            best = min(best, cost[j] + closing)
    return best


def pseudoheight_bruteforce(t: ExtDegreeTable) -> Degree:
    """Enumerate all 2^n - 1 chains; exponential, used as a cross-check."""
    best = INF
    for size in range(1, t.n + 1):
        for chain in combinations(range(1, t.n + 1), size):
            total: Degree = t.serre(chain[-1], chain[0])
            for a, b in zip(chain, chain[1:]):
                total = total + t.plain(a, b)
            if total is not INF:
                total = total - (size - 1)
            best = min(best, total)
    return best


@dataclass(frozen=True)
class ConnectednessVerdict:
    iso_range_max: Degree
    injection_at: Degree
    connected_by_criterion: bool


def connectedness_verdict(ph: Degree, rel_dim: int, n: int) -> ConnectednessVerdict:
    """Restriction HH^i(X/S) -> HH^i(C/S) is iso for i <= ph - 2, injective at ph - 1.

    With locally free E_i the pseudoheight is at least rel_dim - n + 1, so
    rel_dim >= n + 1 already gives an isomorphism through degree 0.
    """
    if ph is INF:
        return ConnectednessVerdict(INF, INF, rel_dim >= n + 1)
    return ConnectednessVerdict(ph - 2, ph - 1, rel_dim >= n + 1)


def _degree_from_json(v, where: str) -> Degree:
    if isinstance(v, str) and v.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    if isinstance(v, bool) or not isinstance(v, int):
        raise PseudoheightError(f"{where}: expected an integer or \"inf\", got {v!r}")
    return v


def _key(k: str, where: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in k.split(","))
    except ValueError:
        raise PseudoheightError(f"{where}: key {k!r} is not of the form \"i,j\"") from None
    return a, b


def table_from_json(data) -> ExtDegreeTable:
    if not isinstance(data, dict):
        raise PseudoheightError("table: expected a JSON object")
    for req in ("n", "rel_dim"):
        if req not in data:
            raise PseudoheightError(f"{req}: missing")
        if isinstance(data[req], bool) or not isinstance(data[req], int):
            raise PseudoheightError(f"{req}: expected an integer")
    plain = {_key(k, "e_plain"): _degree_from_json(v, f"e_plain[{k}]") for k, v in (data.get("e_plain") or {}).items()}
    serre = {_key(k, "e_serre"): _degree_from_json(v, f"e_serre[{k}]") for k, v in (data.get("e_serre") or {}).items()}
    return ExtDegreeTable(data["n"], data["rel_dim"], plain, serre)


def table_to_json(t: ExtDegreeTable) -> dict:
    def enc(v):
        return "inf" if v is INF else v

    return {
        "n": t.n,
        "rel_dim": t.rel_dim,
        "e_plain": {f"{i},{j}": enc(v) for (i, j), v in sorted(t.e_plain.items())},
        "e_serre": {f"{j},{i}": enc(v) for (j, i), v in sorted(t.e_serre.items())},
    }
