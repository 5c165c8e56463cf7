"""JSON file formats for algebras, linear maps, deformation terms and automorphisms.

All rationals are written as reduced ``"p/q"`` strings (integers as ``"k/1"``);
the loader also accepts ``"k"`` and plain JSON integers. Serialization is
canonical: brackets are listed in canonical tuple order with only nonzero
targets, so ``serialize(parse(serialize(A)))`` reproduces the same bytes.
"""
from __future__ import annotations

import json
import re
from importlib import resources
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from .core import (
    AlgebraError,
    BracketTensor,
    HomNambuSuperalgebra,
    LinearMap,
    SuperSpace,
    _canonicalize,
    zeros,
)
from .linalg import as_scalar, format_rational

__all__ = [
    "FORMAT_VERSION",
    "ERROR_CODES",
    "FormatError",
    "format_rational",
    "parse_rational",
    "parse_algebra_file",
    "algebra_to_dict",
    "serialize_algebra",
    "parse_map_file",
    "serialize_map",
    "parse_terms_file",
    "serialize_terms",
    "serialize_automorphism",
    "parse_automorphism_file",
    "corpus_files",
]

FORMAT_VERSION = "1"
ERROR_CODES = ("schema", "index", "rational", "alpha_parity", "grading", "super_skew_conflict")
_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class FormatError(ValueError):
    """A rejected input file; ``code`` is one of ``ERROR_CODES``."""

    def __init__(self, code: str, location: str, message: str):
        if code not in ERROR_CODES:
            raise ValueError(f"unknown error code {code!r}")
        self.code = code
        self.location = location
        self.message = message
        super().__init__(f"[{code}] at {location}: {message}")


def parse_rational(value: Any, location: str):
    if isinstance(value, bool):
        raise FormatError("rational", location, f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if m:
            num, den = int(m.group(1)), int(m.group(2) or 1)
            if den == 0:
                raise FormatError("rational", location, "zero denominator")
            return as_scalar(Fraction(num, den))
    raise FormatError("rational", location, f"malformed rational {value!r}")


def _load_json(data) -> Any:
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError("schema", "file", f"not UTF-8: {exc}") from None
    if isinstance(data, str):
        try:
            return json.loads(data)
        except json.JSONDecodeError as exc:
            raise FormatError("schema", f"line {exc.lineno}", f"invalid JSON: {exc.msg}") from None
    return data


def _require(obj: dict, key: str, kind, location: str):
    if not isinstance(obj, dict):
        raise FormatError("schema", location, "expected an object")
    if key not in obj:
        raise FormatError("schema", location, f"missing field {key!r}")
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise FormatError("schema", f"{location}.{key}", "expected an integer")
    if kind is not int and not isinstance(val, kind):
        raise FormatError("schema", f"{location}.{key}", f"expected {kind.__name__}")
    return val


def _check_version(obj, location="file"):
    v = _require(obj, "version", str, location)
    if v != FORMAT_VERSION:
        raise FormatError("schema", f"{location}.version", f"unsupported version {v!r}")


def _parse_matrix(grid, d: int, location: str) -> np.ndarray:
    if not isinstance(grid, list) or len(grid) != d:
        raise FormatError("schema", location, f"expected {d} rows")
    M = zeros((d, d))
    for i, row in enumerate(grid):
        if not isinstance(row, list) or len(row) != d:
            raise FormatError("schema", f"{location}[{i}]", f"expected {d} entries")
        for j, x in enumerate(row):
            M[i, j] = parse_rational(x, f"{location}[{i}][{j}]")
    return M


def _parse_entries(entries, space: SuperSpace, arity: int, location: str) -> dict:
    """Canonicalize and merge bracket entries, with Koszul signs."""
    if not isinstance(entries, list):
        raise FormatError("schema", location, "expected a list of entries")
    d = space.dim
    par = space.parity
    merged: dict[tuple, list] = {}
    origin: dict[tuple, int] = {}
    for k, entry in enumerate(entries):
        loc = f"{location}[{k}]"
        args = _require(entry, "args", list, loc)
        value = _require(entry, "value", dict, loc)
        if len(args) != arity:
            raise FormatError("schema", f"{loc}.args", f"expected {arity} indices, got {len(args)}")
        for s, a in enumerate(args):
            if isinstance(a, bool) or not isinstance(a, int):
                raise FormatError("schema", f"{loc}.args[{s}]", "expected an integer index")
            if not 0 <= a < d:
                raise FormatError("index", f"{loc}.args[{s}]", f"index {a} out of range 0..{d - 1}")
        vec = [0] * d
        for key, x in value.items():
            if not re.fullmatch(r"\d+", str(key)):
                raise FormatError("schema", f"{loc}.value", f"target {key!r} is not an index")
            t = int(key)
            if not 0 <= t < d:
                raise FormatError("index", f"{loc}.value.{key}", f"index {t} out of range 0..{d - 1}")
            vec[t] = parse_rational(x, f"{loc}.value.{key}")
        want = sum(par[a] for a in args) % 2
        for t, x in enumerate(vec):
            if x != 0 and par[t] != want:
                raise FormatError("grading", f"{loc}.value.{t}",
                                  f"target of parity {par[t]} for arguments of parity {want}")
        c = _canonicalize(tuple(args), par)
        if c is None:
            if any(x != 0 for x in vec):
                raise FormatError("super_skew_conflict", loc,
                                  f"arguments {args} repeat an even index, so the value must be 0")
            continue
        sign, t = c
        signed = [sign * x for x in vec]
        if t in merged and merged[t] != signed:
            raise FormatError("super_skew_conflict", loc,
                              f"conflicts with entry {origin[t]} after reordering to {list(t)}")
        merged[t] = signed
        origin.setdefault(t, k)
    return {t: v for t, v in merged.items() if any(x != 0 for x in v)}


def _parse_header(obj):
    _check_version(obj)
    arity = _require(obj, "arity", int, "file")
    d = _require(obj, "dimension", int, "file")
    if arity < 2:
        raise FormatError("schema", "file.arity", "arity must be at least 2")
    if d < 1:
        raise FormatError("schema", "file.dimension", "dimension must be positive")
    parity = _require(obj, "parity", list, "file")
    if len(parity) != d or any(p not in (0, 1) or isinstance(p, bool) for p in parity):
        raise FormatError("schema", "file.parity", f"expected {d} entries, each 0 or 1")
    return arity, SuperSpace(parity)


def parse_algebra_file(data) -> HomNambuSuperalgebra:
    """Load an algebra from bytes, text or an already decoded object."""
    obj = _load_json(data)
    arity, space = _parse_header(obj)
    d = space.dim
    A = _parse_matrix(_require(obj, "alpha", list, "file"), d, "file.alpha")
    par = space.parity
    for i in range(d):
        for j in range(d):
            if A[i, j] != 0 and par[i] != par[j]:
                raise FormatError("alpha_parity", f"file.alpha[{i}][{j}]",
                                  "alpha must be even (no entries between even and odd parts)")
    vals = _parse_entries(_require(obj, "bracket", list, "file"), space, arity, "file.bracket")
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise FormatError("schema", "file.name", "expected a string")
    try:
        bracket = BracketTensor(space, arity, vals)
        return HomNambuSuperalgebra(space, arity, bracket, LinearMap(space, A, 0), name)
    except AlgebraError as exc:  # pragma: no cover - the checks above are stricter
        raise FormatError("schema", "file", str(exc)) from None


def _entries(F: BracketTensor) -> list:
    out = []
    for t, v in sorted(F.items()):
        value = {str(k): format_rational(x) for k, x in enumerate(v) if x != 0}
        if value:
            out.append({"args": list(t), "value": value})
    return out


def _matrix(M) -> list:
    return [[format_rational(x) for x in row] for row in M]


def _flat(obj) -> bool:
    """Lists of scalars and small objects are written on a single line."""
    if isinstance(obj, list):
        return all(not isinstance(x, (list, dict)) for x in obj)
    if isinstance(obj, dict):
        return all(not isinstance(x, (list, dict)) or _flat(x) for x in obj.values())
    return True


def _render(obj, indent: int) -> str:
    if not isinstance(obj, (list, dict)) or _flat(obj) and (isinstance(obj, list) or indent > 0):
        return json.dumps(obj, separators=(", ", ": "))
    pad = "  " * (indent + 1)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        inner = ",\n".join(pad + _render(x, indent + 1) for x in obj)
        return "[\n" + inner + "\n" + "  " * indent + "]"
    inner = ",\n".join(f"{pad}{json.dumps(k)}: {_render(v, indent + 1)}" for k, v in obj.items())
    return "{\n" + inner + "\n" + "  " * indent + "}"


def _dump(obj) -> str:
    return _render(obj, 0) + "\n"


def algebra_to_dict(alg: HomNambuSuperalgebra) -> dict:
    out = {"version": FORMAT_VERSION}
    if alg.name:
        out["name"] = alg.name
    out.update({
        "arity": alg.arity,
        "dimension": alg.dim,
        "parity": list(alg.parity),
        "alpha": _matrix(alg.alpha.matrix),
        "bracket": _entries(alg.bracket),
    })
    return out


def serialize_algebra(alg: HomNambuSuperalgebra) -> bytes:
    return _dump(algebra_to_dict(alg)).encode("utf-8")


def parse_map_file(data, space: SuperSpace, target: Optional[SuperSpace] = None) -> LinearMap:
    """A map file holds ``{"version", "matrix"}``; column ``j`` is the image of ``e_j``."""
    obj = _load_json(data)
    _check_version(obj)
    target = space if target is None else target
    grid = _require(obj, "matrix", list, "file")
    if len(grid) != target.dim:
        raise FormatError("schema", "file.matrix", f"expected {target.dim} rows")
    M = zeros((target.dim, space.dim))
    for i, row in enumerate(grid):
        if not isinstance(row, list) or len(row) != space.dim:
            raise FormatError("schema", f"file.matrix[{i}]", f"expected {space.dim} entries")
        for j, x in enumerate(row):
            M[i, j] = parse_rational(x, f"file.matrix[{i}][{j}]")
    return LinearMap(space, M, target=target)


def serialize_map(f: LinearMap) -> bytes:
    return _dump({"version": FORMAT_VERSION, "matrix": _matrix(f.matrix)}).encode("utf-8")


def parse_terms_file(data, alg: HomNambuSuperalgebra, order: Optional[int] = None) -> list[BracketTensor]:
    """Deformation terms ``f_1..f_N``; one block of bracket entries per power of t.

    Missing trailing blocks are zero. ``order`` overrides the file's order
    (extra blocks beyond it are rejected).
    """
    obj = _load_json(data)
    _check_version(obj)
    N = _require(obj, "order", int, "file") if order is None else order
    if N < 0:
        raise FormatError("schema", "file.order", "order must be nonnegative")
    blocks = _require(obj, "terms", list, "file")
    if len(blocks) > N:
        raise FormatError("schema", "file.terms", f"{len(blocks)} blocks for order {N}")
    out = []
    for p in range(N):
        if p < len(blocks):
            vals = _parse_entries(blocks[p], alg.space, alg.arity, f"file.terms[{p}]")
            out.append(BracketTensor(alg.space, alg.arity, vals))
        else:
            out.append(BracketTensor.zero(alg.space, alg.arity))
    return out


def serialize_terms(terms: list[BracketTensor]) -> bytes:
    """Serialize ``f_1..f_N`` (order-0 term excluded)."""
    return _dump({"version": FORMAT_VERSION, "order": len(terms),
                  "terms": [_entries(F) for F in terms]}).encode("utf-8")


def serialize_automorphism(matrices: list) -> bytes:
    """Serialize ``phi_1..phi_N`` (``phi_0 = id`` implied)."""
    return _dump({"version": FORMAT_VERSION, "order": len(matrices),
                  "terms": [_matrix(M) for M in matrices]}).encode("utf-8")


def parse_automorphism_file(data, space: SuperSpace) -> list[LinearMap]:
    obj = _load_json(data)
    _check_version(obj)
    N = _require(obj, "order", int, "file")
    blocks = _require(obj, "terms", list, "file")
    if len(blocks) != N:
        raise FormatError("schema", "file.terms", f"{len(blocks)} blocks for order {N}")
    return [LinearMap(space, _parse_matrix(b, space.dim, f"file.terms[{p}]"))
            for p, b in enumerate(blocks)]


def corpus_files() -> dict:
    """The bundled example algebra files, keyed by stem."""
    root = resources.files("homnambu") / "corpus"
    return {p.name[:-5]: p for p in sorted(root.iterdir(), key=lambda p: p.name) if p.name.endswith(".json")}
