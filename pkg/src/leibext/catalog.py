"""Named test algebras and modules.

Catalog strings::

    sl2                 the Lie algebra sl2 in the basis (e, h, f)
    abelian:N           N-dimensional abelian algebra
    sl2+sl2             direct sum of two copies of sl2
    hemi:sl2:Vm         hemisemidirect product sl2 + V(m)
    V:m                 irreducible sl2-module of highest weight m
"""

from __future__ import annotations

import re

from .algebra import LeibnizAlgebra, LieAlgebra
from .bimodule import LieModule
from .exactlin import Mat

__all__ = [
    "CatalogError",
    "GuardError",
    "MAX_WEIGHT",
    "MAX_DIM",
    "sl2",
    "sl2_irrep",
    "abelian",
    "direct_sum",
    "hemisemidirect",
    "algebra_from_spec",
    "module_from_spec",
    "is_catalog_spec",
]

MAX_WEIGHT = 10
MAX_DIM = 20


class CatalogError(ValueError):
    """Unparseable catalog string."""


class GuardError(ValueError):
    """A request exceeds the desk-scale size guards."""


_SL2 = None


def sl2() -> LieAlgebra:
    """sl2 with [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    global _SL2
    if _SL2 is None:
        e, h, f = 0, 1, 2
        br = {
            (h, e): {e: 2}, (e, h): {e: -2},
            (h, f): {f: -2}, (f, h): {f: 2},
            (e, f): {h: 1}, (f, e): {h: -1},
        }
        _SL2 = LieAlgebra(3, ("e", "h", "f"), br, name="sl2")
    return _SL2


def sl2_irrep(m: int, g: LieAlgebra | None = None) -> LieModule:
    """V(m) in the weight basis v_0..v_m, h v_k = (m-2k) v_k.

    ``f v_k = (k+1) v_{k+1}`` and ``e v_k = (m-k+1) v_{k-1}``.
    """
    if m < 0:
        raise CatalogError("highest weight must be nonnegative")
    if m > MAX_WEIGHT:
        raise GuardError(f"highest weight {m} exceeds the guard {MAX_WEIGHT}")
    g = g or sl2()
    d = m + 1
    E = Mat(d, d, {(k - 1, k): m - k + 1 for k in range(1, d)})
    H = Mat(d, d, {(k, k): m - 2 * k for k in range(d)})
    F = Mat(d, d, {(k + 1, k): k + 1 for k in range(d - 1)})
    return LieModule(g, d, (E, H, F), name=f"V({m})")


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, tuple(f"x{i}" for i in range(n)), {}, name=f"abelian{n}")


def direct_sum(a: LeibnizAlgebra, b: LeibnizAlgebra) -> LeibnizAlgebra:
    n = a.dim
    br = dict(a.brackets)
    for (i, j), terms in b.brackets.items():
        br[(i + n, j + n)] = {k + n: v for k, v in terms.items()}
    labels = tuple(f"{x}_1" for x in a.labels) + tuple(f"{x}_2" for x in b.labels)
    cls = LieAlgebra if isinstance(a, LieAlgebra) and isinstance(b, LieAlgebra) else LeibnizAlgebra
    return cls(a.dim + b.dim, labels, br, name=f"{a.name}+{b.name}")


def hemisemidirect(g: LieAlgebra, v: LieModule) -> LeibnizAlgebra:
    """``g + V`` with bracket ``[(x,u), (y,w)] = ([x,y], x.w)``."""
    n, m = g.dim, v.dim
    if n + m > MAX_DIM:
        raise GuardError(f"total dimension {n + m} exceeds the guard {MAX_DIM}")
    br = {key: dict(t) for key, t in g.brackets.items()}
    for i in range(n):
        for j in range(m):
            col = v.rho[i].column(j)
            if col:
                br[(i, n + j)] = {n + k: c for k, c in col.items()}
    labels = g.labels + tuple(f"v{k}" for k in range(m))
    vname = v.name.replace("(", "").replace(")", "") if v.name else "V"
    return LeibnizAlgebra(n + m, labels, br, name=f"hemi:{g.name}:{vname}")


_ALG_PATTERNS = [
    (re.compile(r"^sl2$"), lambda m: sl2()),
    (re.compile(r"^sl2\+sl2$"), lambda m: direct_sum(sl2(), sl2())),
    (re.compile(r"^abelian:(\d+)$"), lambda m: _guarded_abelian(int(m.group(1)))),
    (re.compile(r"^hemi:sl2:V(\d+)$"), lambda m: hemisemidirect(sl2(), sl2_irrep(int(m.group(1))))),
]


def _guarded_abelian(n: int) -> LieAlgebra:
    if n > MAX_DIM:
        raise GuardError(f"dimension {n} exceeds the guard {MAX_DIM}")
    return abelian(n)


def is_catalog_spec(spec: str) -> bool:
    return any(p.match(spec) for p, _ in _ALG_PATTERNS)


def algebra_from_spec(spec: str) -> LeibnizAlgebra:
    for pattern, build in _ALG_PATTERNS:
        m = pattern.match(spec.strip())
        if m:
            return build(m)
    raise CatalogError(f"unknown algebra spec {spec!r}")


def module_from_spec(spec: str, g: LieAlgebra | None = None) -> LieModule:
    """``V:m`` over ``g`` (default catalog sl2; ``g`` must carry sl2 constants)."""
    m = re.match(r"^(?:simple:)?V:?(\d+)$", spec.strip())
    if not m:
        raise CatalogError(f"unknown module spec {spec!r}")
    if g is not None and not g.same_structure(sl2()):
        raise CatalogError("V:m modules are only defined over sl2 in the basis (e, h, f)")
    return sl2_irrep(int(m.group(1)), g)
