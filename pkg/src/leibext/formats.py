"""JSON files for algebras and the modules over them.

Rationals are always written as integer pairs.  Algebra files::

    {"dim": 3, "basis": ["e", "h", "f"],
     "brackets": [{"i": 1, "j": 0, "terms": [{"k": 0, "num": 2, "den": 1}]}, ...]}

Matrices are sparse lists of ``[row, col, [num, den]]`` triples in row-major
order.  Bimodule files carry ``algebra``, ``dim``, ``left`` and ``right``
(one matrix per basis element), or the shorthand
``{"algebra": ..., "simple": "V:m", "parity": "s"}``.  Lie module files carry
``dim`` and ``rho``.

``dump_*`` writes the canonical form, so ``dump(load(text)) == text`` for any
canonical file.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Any

from .algebra import LeibnizAlgebra, LieAlgebra, lie_quotient
from .bimodule import Bimodule, LieModule, Parity, lift, trivial_bimodule
from .catalog import CatalogError, algebra_from_spec, is_catalog_spec, sl2, sl2_irrep
from .exactlin import Mat

__all__ = [
    "FormatError",
    "load_algebra",
    "dump_algebra",
    "read_algebra",
    "load_bimodule",
    "dump_bimodule",
    "load_lie_module",
    "dump_lie_module",
    "matrix_to_json",
    "matrix_from_json",
    "vector_to_json",
]


class FormatError(ValueError):
    """Malformed input file."""


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{what} must be an integer, got {x!r}")
    return x


def _rational(num, den, what: str) -> Fraction:
    num, den = _int(num, f"{what} num"), _int(den, f"{what} den")
    if den == 0:
        raise FormatError(f"{what}: zero denominator")
    return Fraction(num, den)


def _pair(v: Fraction) -> list[int]:
    return [v.numerator, v.denominator]


def _field(obj: dict, key: str, what: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{what} must be a JSON object")
    if key not in obj:
        raise FormatError(f"{what} is missing {key!r}")
    return obj[key]


def _parse_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


def _canonical(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- matrices ------------------------------------------------------------------


def matrix_to_json(m: Mat) -> list:
    return [[r, c, _pair(v)] for r, c, v in m.items()]


def matrix_from_json(data, rows: int, cols: int, what: str = "matrix") -> Mat:
    if not isinstance(data, list):
        raise FormatError(f"{what} must be a list of [row, col, [num, den]] triples")
    entries: dict[tuple[int, int], Fraction] = {}
    for t in data:
        if not isinstance(t, list) or len(t) != 3 or not isinstance(t[2], list) or len(t[2]) != 2:
            raise FormatError(f"{what}: bad entry {t!r}")
        r, c = _int(t[0], f"{what} row"), _int(t[1], f"{what} col")
        if not (0 <= r < rows and 0 <= c < cols):
            raise FormatError(f"{what}: entry ({r}, {c}) outside {rows}x{cols}")
        if (r, c) in entries:
            raise FormatError(f"{what}: duplicate entry ({r}, {c})")
        entries[(r, c)] = _rational(t[2][0], t[2][1], what)
    return Mat(rows, cols, entries)


def vector_to_json(col: Mat, j: int = 0) -> list:
    return [[i, _pair(v)] for i, v in sorted(col.column(j).items())]


# -- algebras ------------------------------------------------------------------


def load_algebra(text: str, name: str = "") -> LeibnizAlgebra:
    obj = _parse_json(text)
    n = _int(_field(obj, "dim", "algebra"), "dim")
    basis = _field(obj, "basis", "algebra")
    if not isinstance(basis, list) or len(basis) != n or not all(isinstance(b, str) for b in basis):
        raise FormatError(f"basis must list {n} strings")
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    recs = _field(obj, "brackets", "algebra")
    if not isinstance(recs, list):
        raise FormatError("brackets must be a list")
    for rec in recs:
        i, j = _int(_field(rec, "i", "bracket"), "i"), _int(_field(rec, "j", "bracket"), "j")
        if not (0 <= i < n and 0 <= j < n):
            raise FormatError(f"bracket index ({i}, {j}) out of range")
        if (i, j) in brackets:
            raise FormatError(f"bracket ({i}, {j}) given twice")
        terms = {}
        terms_json = _field(rec, "terms", "bracket")
        if not isinstance(terms_json, list):
            raise FormatError("terms must be a list")
        for t in terms_json:
            k = _int(_field(t, "k", "term"), "k")
            if not 0 <= k < n:
                raise FormatError(f"term index {k} out of range")
            v = _rational(_field(t, "num", "term"), _field(t, "den", "term"), f"[e{i}, e{j}]")
            terms[k] = terms.get(k, 0) + v
        brackets[(i, j)] = terms
    if isinstance(obj.get("name"), str):
        name = obj["name"]
    return LeibnizAlgebra(n, tuple(basis), brackets, name=name)


def dump_algebra(h: LeibnizAlgebra) -> str:
    recs = []
    for (i, j) in sorted(h.brackets):
        terms = [
            {"k": k, "num": v.numerator, "den": v.denominator}
            for k, v in sorted(h.brackets[(i, j)].items())
        ]
        if terms:
            recs.append({"i": i, "j": j, "terms": terms})
    return _canonical({"dim": h.dim, "basis": list(h.labels), "brackets": recs})


def read_algebra(spec: str) -> LeibnizAlgebra:
    """Catalog string or path to an algebra file."""
    if is_catalog_spec(spec):
        return algebra_from_spec(spec)
    if not os.path.exists(spec):
        raise CatalogError(f"{spec!r} is neither a catalog spec nor an existing file")
    with open(spec, encoding="utf-8") as fh:
        text = fh.read()
    return load_algebra(text, name=os.path.splitext(os.path.basename(spec))[0])


# -- modules -------------------------------------------------------------------


def _matrices(obj, key: str, count: int, d: int) -> list[Mat]:
    mats = _field(obj, key, "module")
    if not isinstance(mats, list) or len(mats) != count:
        raise FormatError(f"{key} must hold {count} matrices")
    return [matrix_from_json(m, d, d, f"{key}[{x}]") for x, m in enumerate(mats)]


def load_bimodule(text: str, h: LeibnizAlgebra, base_dir: str = ".") -> Bimodule:
    obj = _parse_json(text)
    if isinstance(obj, dict) and "algebra" in obj:
        ref = obj["algebra"]
        if not isinstance(ref, str):
            raise FormatError("algebra must be a path or catalog string")
        if not is_catalog_spec(ref) and not os.path.isabs(ref):
            ref = os.path.join(base_dir, ref)
        if not read_algebra(ref).same_structure(h):
            raise FormatError("bimodule file refers to a different algebra")
    if isinstance(obj, dict) and "simple" in obj:
        return simple_bimodule(h, str(obj["simple"]), str(_field(obj, "parity", "bimodule")))
    d = _int(_field(obj, "dim", "bimodule"), "dim")
    left = _matrices(obj, "left", h.dim, d)
    right = _matrices(obj, "right", h.dim, d)
    name = obj["name"] if isinstance(obj.get("name"), str) else ""
    return Bimodule(h, d, left, right, name=name)


def dump_bimodule(b: Bimodule, algebra_ref: str) -> str:
    return _canonical({
        "algebra": algebra_ref,
        "dim": b.dim,
        "left": [matrix_to_json(a) for a in b.left],
        "right": [matrix_to_json(a) for a in b.right],
    })


def load_lie_module(text: str, g: LieAlgebra) -> LieModule:
    obj = _parse_json(text)
    d = _int(_field(obj, "dim", "module"), "dim")
    return LieModule(g, d, _matrices(obj, "rho", g.dim, d))


def dump_lie_module(m: LieModule) -> str:
    return _canonical({"dim": m.dim, "rho": [matrix_to_json(a) for a in m.rho]})


def simple_bimodule(h: LeibnizAlgebra, weight_spec: str, parity: str) -> Bimodule:
    """``V:m`` lifted with parity ``s``/``a``; ``V:0`` is the trivial bimodule."""
    s = weight_spec.strip()
    if s.startswith("simple:"):
        s = s[len("simple:"):]
    parts = s.split(":")
    if len(parts) != 2 or parts[0] != "V" or not parts[1].isdigit():
        raise CatalogError(f"unknown simple module {weight_spec!r}")
    m = int(parts[1])
    try:
        par = Parity.parse(parity)
    except ValueError as exc:
        raise CatalogError(str(exc)) from exc
    if m == 0:
        return trivial_bimodule(h)
    qd = lie_quotient(h)
    if not qd.quotient.same_structure(sl2()):
        raise CatalogError(f"V:{m} needs an algebra whose Lie quotient is sl2 in the basis (e, h, f)")
    return lift(sl2_irrep(m, qd.quotient), par, h, qd)
