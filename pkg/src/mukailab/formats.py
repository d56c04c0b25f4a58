"""Text and JSON formats: class expressions, lattices, models, Mukai vectors.

Class expressions are linear combinations of basis labels, e.g. ``D``,
``-D``, ``3D-E``, ``-(D+2E)``, ``2*e1 + e2``. A bare ``0`` is the zero
class; on a rank one lattice a bare integer ``k`` means k times the
generator.
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .lattice import IntLattice, LatticeError, LatticeVector
from .mukai import K3Model, MukaiError, MukaiVector, named_model


class FormatError(ValueError):
    """Input that does not parse; ``field`` names the offending key or argument."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.replace("−", "-")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", num))
        elif name is not None:
            out.append(("name", name))
        elif op is not None and not op.isspace():
            out.append(("op", op))
    return out


class _ClassParser:
    def __init__(self, lattice: IntLattice, text: str):
        self.lat = lattice
        self.toks = _tokens(text)
        self.i = 0
        self.text = text

    def fail(self, msg: str):
        raise FormatError(f"{msg} in class expression {self.text!r}")

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> tuple[int, ...]:
        if not self.toks:
            self.fail("empty")
        v = self.expr()
        if self.i != len(self.toks):
            self.fail(f"unexpected {self.peek()[1]!r}")
        return v

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = [sign * x for x in self.term()]
        while self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
            acc = [a + sign * b for a, b in zip(acc, self.term())]
        return acc

    def term(self):
        if self.peek() == ("op", "-"):
            self.take()
            return [-x for x in self.term()]
        kind, val = self.peek()
        coef = 1
        if kind == "int":
            self.take()
            coef = int(val)
            if self.peek() == ("op", "*"):
                self.take()
            elif self.peek()[0] not in ("name",) and self.peek() != ("op", "("):
                return self.scalar(coef)
        return [coef * x for x in self.factor()]

    def scalar(self, k: int):
        n = self.lat.rank
        if k == 0:
            return [0] * n
        if n == 1:
            return [k]
        self.fail(f"bare integer {k} is ambiguous on a rank {n} lattice")

    def factor(self):
        kind, val = self.take()
        if kind == "name":
            if val not in self.lat.labels:
                raise FormatError(f"unknown class {val!r}; labels are {list(self.lat.labels)}")
            return list(self.lat[val].coords)
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return v
        self.fail(f"unexpected {val!r}")


def parse_class(lattice: IntLattice, text: str) -> LatticeVector:
    return lattice.vector(_ClassParser(lattice, text).parse())


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


def parse_mukai_vector(m: K3Model, text: str) -> MukaiVector:
    """``(r, c1, s)`` with a class expression for c1, or ``(r, x1, .., xrho, s)``."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise FormatError(f"Mukai vector must be parenthesized: {text!r}")
    parts = _split_top(body[1:-1])
    try:
        if len(parts) == 3:
            return MukaiVector(int(parts[0]), parse_class(m.picard, parts[1]), int(parts[2]))
        if len(parts) == m.mukai_rank:
            return m.vector_from_coords(int(p) for p in parts)
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad Mukai vector {text!r}: {exc}") from None
    raise FormatError(f"Mukai vector {text!r} needs 3 or {m.mukai_rank} entries")


def parse_vector(lattice: IntLattice, data: Any, field: str = "vector") -> LatticeVector:
    """Integer array, {label: coefficient} map, or class expression string."""
    try:
        if isinstance(data, str):
            text = data.strip()
            if text.startswith("["):
                data = json.loads(text)
            else:
                return parse_class(lattice, text)
        if isinstance(data, dict):
            coords = [0] * lattice.rank
            for key, val in data.items():
                if key not in lattice.labels:
                    raise FormatError(f"unknown label {key!r}", field)
                coords[lattice.labels.index(key)] += _int(val, field)
            return lattice.vector(coords)
        if isinstance(data, list):
            return lattice.vector([_int(x, field) for x in data])
    except (LatticeError, json.JSONDecodeError) as exc:
        raise FormatError(str(exc), field) from None
    except FormatError as exc:
        raise FormatError(str(exc).removeprefix(f"{field}: "), field) from None
    raise FormatError(f"cannot read a vector from {data!r}", field)


def _int(x: Any, field: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"expected an integer, got {x!r}", field)
    return x


def lattice_from_json(data: Any, field: str = "lattice") -> IntLattice:
    if not isinstance(data, dict) or "gram" not in data:
        raise FormatError("expected an object with a 'gram' matrix", field)
    gram = data["gram"]
    if not isinstance(gram, list) or not all(isinstance(row, list) for row in gram):
        raise FormatError("must be a list of integer rows", f"{field}.gram")
    rows = [[_int(x, f"{field}.gram") for x in row] for row in gram]
    labels = data.get("labels") or ()
    if not isinstance(labels, (list, tuple)) or not all(isinstance(x, str) for x in labels):
        raise FormatError("must be a list of strings", f"{field}.labels")
    try:
        return IntLattice(rows, tuple(labels))
    except LatticeError as exc:
        raise FormatError(str(exc), f"{field}.gram") from None


def lattice_to_json(lattice: IntLattice) -> dict:
    return {"labels": list(lattice.labels), "gram": [list(r) for r in lattice.gram]}


def model_from_json(data: Any) -> K3Model:
    if not isinstance(data, dict):
        raise FormatError("expected a JSON object", "model")
    pic = lattice_from_json(data.get("picard"), "picard")
    if "polarization" not in data:
        raise FormatError("missing", "polarization")
    pol = parse_vector(pic, data["polarization"], "polarization")
    try:
        model = K3Model(pic, pol, str(data.get("name", "")))
        for key, raw in (data.get("spherical") or {}).items():
            model = model.with_spherical(key, mukai_vector_from_json(model, raw, f"spherical.{key}"))
    except MukaiError as exc:
        raise FormatError(str(exc), "model") from None
    return model


def mukai_vector_from_json(m: K3Model, data: Any, field: str = "vector") -> MukaiVector:
    if isinstance(data, str):
        return parse_mukai_vector(m, data)
    if isinstance(data, dict) and {"r", "c1", "s"} <= data.keys():
        return MukaiVector(_int(data["r"], f"{field}.r"), parse_vector(m.picard, data["c1"], f"{field}.c1"), _int(data["s"], f"{field}.s"))
    raise FormatError('expected {"r": .., "c1": .., "s": ..}', field)


def mukai_vector_to_json(v: MukaiVector) -> dict:
    labels = v.c1.ambient.labels
    return {"r": v.r, "c1": {k: c for k, c in zip(labels, v.c1.coords) if c}, "s": v.s}


def load_json(path: str | Path, field: str = "input") -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}", field) from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON ({exc.msg}, line {exc.lineno})", field) from None


def resolve_model(source: str) -> K3Model:
    """A bundled model name or a path to a JSON model file."""
    try:
        return named_model(source)
    except MukaiError:
        if not Path(source).exists():
            raise FormatError(f"neither a bundled model nor a file: {source!r}", "model") from None
    return model_from_json(load_json(source, "model"))
