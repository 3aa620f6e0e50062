"""Leibniz and Chevalley-Eilenberg cochain complexes and their cohomology.

Leibniz cochains ``CL^q(h, M) = Hom(h^{(x)q}, M)`` use the coordinate
``index(i_1..i_q) * dim M + a`` with multi-indices in lexicographic order.
Chevalley-Eilenberg cochains ``Hom(L^p g, V)`` use strictly increasing
multi-indices in lexicographic order.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from math import comb

from .algebra import LeibnizAlgebra, LieAlgebra, QuotientData, lie_quotient
from .bimodule import Bimodule, LieModule, check_module
from .catalog import GuardError
from .exactlin import InvariantSubspaceError, Mat, Subquotient, kernel_basis, rank

log = logging.getLogger(__name__)

__all__ = [
    "CochainComplex",
    "CohomologySpace",
    "SignConventionError",
    "InducedActionError",
    "leibniz_complex",
    "hl",
    "hl_dims",
    "ce_complex",
    "ce",
    "ce_dims",
    "induced_action_on_hl",
    "cochain_action",
    "LeibnizCohomology",
    "CECohomology",
    "DEFAULT_DEGREE",
]

DEFAULT_DEGREE = 3
_GUARD_DEGREE = 4
_GUARD_SIZE = 40


class SignConventionError(RuntimeError):
    """d o d != 0 on a generated complex."""


class InducedActionError(RuntimeError):
    """The cochain-level action does not descend to a Lie module on HL^q."""


@dataclass(frozen=True, eq=False)
class CochainComplex:
    dims: tuple[int, ...]
    d: tuple[Mat, ...]

    def check(self) -> None:
        for q in range(len(self.d) - 1):
            if not (self.d[q + 1] @ self.d[q]).is_zero():
                raise SignConventionError(f"d^{q + 1} o d^{q} != 0")


@dataclass(frozen=True, eq=False)
class CohomologySpace:
    degree: int
    dim: int
    representatives: Mat
    splitting: Subquotient | None = field(default=None, repr=False)


def _guard(n: int, m: int, D: int) -> None:
    if D > _GUARD_DEGREE and n * m > _GUARD_SIZE:
        est = n ** (D + 1) * m
        raise GuardError(
            f"degree {D} refused for dim h * dim M = {n * m} > {_GUARD_SIZE} "
            f"(largest cochain space would have dimension {est})"
        )


def _block_add(data: dict, r0: int, c0: int, block: Mat, sign) -> None:
    for r, c, v in block.items():
        row = data.setdefault(r0 + r, {})
        s = row.get(c0 + c, 0) + sign * v
        if s:
            row[c0 + c] = s
        else:
            row.pop(c0 + c, None)


def _eye_add(data: dict, r0: int, c0: int, m: int, coeff) -> None:
    for a in range(m):
        row = data.setdefault(r0 + a, {})
        s = row.get(c0 + a, 0) + coeff
        if s:
            row[c0 + a] = s
        else:
            row.pop(c0 + a, None)


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def _tuple_index(t, n: int) -> int:
    idx = 0
    for i in t:
        idx = idx * n + i
    return idx


def leibniz_differential(h: LeibnizAlgebra, m: Bimodule, q: int) -> Mat:
    """Matrix of ``dL^q : CL^q -> CL^{q+1}``.

    dL^q w(x_0..x_q) = sum_{i<q} (-1)^i [x_i, w(..^x_i..)]_L
                       + (-1)^{q-1} [w(x_0..x_{q-1}), x_q]_R
                       + sum_{i<j} (-1)^{i+1} w(..^x_i.., [x_i, x_j], ..)
    """
    n, dm = h.dim, m.dim
    data: dict[int, dict] = {}
    for J in itertools.product(range(n), repeat=q + 1):
        r0 = _tuple_index(J, n) * dm
        for i in range(q):
            rest = J[:i] + J[i + 1:]
            _block_add(data, r0, _tuple_index(rest, n) * dm, m.left[J[i]], _sgn(i))
        _block_add(data, r0, _tuple_index(J[:q], n) * dm, m.right[J[q]], _sgn(q - 1))
        for i in range(q + 1):
            for j in range(i + 1, q + 1):
                sign = _sgn(i + 1)
                for k, c in h.basis_bracket(J[i], J[j]).items():
                    t = list(J)
                    t[j] = k
                    del t[i]
                    _eye_add(data, r0, _tuple_index(t, n) * dm, dm, sign * c)
    return Mat._from_rows(n ** (q + 1) * dm, n**q * dm, data)


def leibniz_complex(h: LeibnizAlgebra, m: Bimodule, D: int = DEFAULT_DEGREE) -> CochainComplex:
    """Differentials ``dL^0 .. dL^D``; ``d o d = 0`` is verified."""
    if D < 0:
        raise ValueError("degree must be nonnegative")
    _guard(h.dim, m.dim, D)
    ds = tuple(leibniz_differential(h, m, q) for q in range(D + 1))
    cx = CochainComplex(tuple(h.dim**q * m.dim for q in range(D + 2)), ds)
    cx.check()
    return cx


def _ce_differential(g: LieAlgebra, v: LieModule, p: int) -> Mat:
    """dw(x_0..x_p) = sum (-1)^i x_i.w(..^x_i..) + sum_{i<j} (-1)^{i+j} w([x_i,x_j], ..^x_i..^x_j..)."""
    n, dm = g.dim, v.dim
    src = {c: k for k, c in enumerate(itertools.combinations(range(n), p))}
    data: dict[int, dict] = {}
    for ridx, J in enumerate(itertools.combinations(range(n), p + 1)):
        r0 = ridx * dm
        for i in range(p + 1):
            rest = J[:i] + J[i + 1:]
            _block_add(data, r0, src[rest] * dm, v.rho[J[i]], _sgn(i))
        for i in range(p + 1):
            for j in range(i + 1, p + 1):
                rest = tuple(x for t, x in enumerate(J) if t not in (i, j))
                for k, c in g.basis_bracket(J[i], J[j]).items():
                    if k in rest:
                        continue
                    pos = sum(1 for x in rest if x < k)
                    key = tuple(sorted(rest + (k,)))
                    _eye_add(data, r0, src[key] * dm, dm, _sgn(i + j + pos) * c)
    return Mat._from_rows(comb(n, p + 1) * dm, comb(n, p) * dm, data)


def ce_complex(g: LieAlgebra, v: LieModule, D: int = DEFAULT_DEGREE) -> CochainComplex:
    if D < 0:
        raise ValueError("degree must be nonnegative")
    ds = tuple(_ce_differential(g, v, p) for p in range(D + 1))
    cx = CochainComplex(tuple(comb(g.dim, p) * v.dim for p in range(D + 2)), ds)
    cx.check()
    return cx


class _Cohomology:
    """Lazy per-degree differentials, ranks and cohomology spaces."""

    def __init__(self):
        self._d: dict[int, Mat] = {}
        self._rank: dict[int, int] = {}
        self._space: dict[int, CohomologySpace] = {}
        self._checked: set[int] = set()

    def _build(self, q: int) -> Mat:
        raise NotImplementedError

    def cochain_dim(self, q: int) -> int:
        raise NotImplementedError

    def differential(self, q: int) -> Mat:
        if q not in self._d:
            self._d[q] = self._build(q)
        if q >= 1 and q not in self._checked:
            if not (self._d[q] @ self.differential(q - 1)).is_zero():
                raise SignConventionError(f"d^{q} o d^{q - 1} != 0")
            self._checked.add(q)
        return self._d[q]

    def d_rank(self, q: int) -> int:
        if q < 0:
            return 0
        if q not in self._rank:
            if self.cochain_dim(q) == 0 or self.cochain_dim(q + 1) == 0:
                self._rank[q] = 0
            else:
                self._rank[q] = rank(self.differential(q))
        return self._rank[q]

    def dim(self, q: int) -> int:
        if self.cochain_dim(q) == 0:
            return 0
        return self.cochain_dim(q) - self.d_rank(q) - self.d_rank(q - 1)

    def space(self, q: int) -> CohomologySpace:
        if q not in self._space:
            c = self.cochain_dim(q)
            if self.cochain_dim(q + 1) == 0:
                z = Mat.identity(c)
            else:
                z = kernel_basis(self.differential(q)).basis
            b = self.differential(q - 1) if q >= 1 and self.cochain_dim(q - 1) else Mat.zeros(c, 0)
            sq = Subquotient(z, b)
            self._space[q] = CohomologySpace(q, sq.dim, sq.reps, sq)
            if q >= 1:
                self._rank.setdefault(q - 1, sq.boundaries.cols)
        return self._space[q]


class LeibnizCohomology(_Cohomology):
    def __init__(self, h: LeibnizAlgebra, m: Bimodule, max_degree: int | None = None):
        super().__init__()
        self.h, self.m = h, m
        if max_degree is not None:
            _guard(h.dim, m.dim, max_degree)

    def cochain_dim(self, q: int) -> int:
        return 0 if q < 0 else self.h.dim**q * self.m.dim

    def _build(self, q: int) -> Mat:
        log.debug("building dL^%d for dim h=%d dim M=%d", q, self.h.dim, self.m.dim)
        return leibniz_differential(self.h, self.m, q)


class CECohomology(_Cohomology):
    def __init__(self, g: LieAlgebra, v: LieModule):
        super().__init__()
        self.g, self.v = g, v

    def cochain_dim(self, p: int) -> int:
        return 0 if p < 0 or p > self.g.dim else comb(self.g.dim, p) * self.v.dim

    def _build(self, p: int) -> Mat:
        return _ce_differential(self.g, self.v, p)


def hl(h: LeibnizAlgebra, m: Bimodule, D: int = DEFAULT_DEGREE) -> list[CohomologySpace]:
    """``HL^q(h, M)`` for ``q = 0..D`` with representative cocycles."""
    _guard(h.dim, m.dim, D)
    lc = LeibnizCohomology(h, m)
    return [lc.space(q) for q in range(D + 1)]


def hl_dims(h: LeibnizAlgebra, m: Bimodule, D: int = DEFAULT_DEGREE) -> list[int]:
    _guard(h.dim, m.dim, D)
    lc = LeibnizCohomology(h, m)
    return [lc.dim(q) for q in range(D + 1)]


def ce(g: LieAlgebra, v: LieModule, D: int = DEFAULT_DEGREE) -> list[CohomologySpace]:
    cc = CECohomology(g, v)
    return [cc.space(p) for p in range(D + 1)]


def ce_dims(g: LieAlgebra, v: LieModule, D: int = DEFAULT_DEGREE) -> list[int]:
    cc = CECohomology(g, v)
    return [cc.dim(p) for p in range(D + 1)]


def cochain_action(h: LeibnizAlgebra, m: Bimodule, q: int, x: int) -> Mat:
    """``(x.w)(y_1..y_q) = [x, w(y_1..y_q)]_L - sum_i w(.., [x, y_i], ..)`` on CL^q."""
    n, dm = h.dim, m.dim
    data: dict[int, dict] = {}
    for J in itertools.product(range(n), repeat=q):
        r0 = _tuple_index(J, n) * dm
        _block_add(data, r0, r0, m.left[x], 1)
        for i in range(q):
            for k, c in h.basis_bracket(x, J[i]).items():
                t = list(J)
                t[i] = k
                _eye_add(data, r0, _tuple_index(t, n) * dm, dm, -c)
    size = n**q * dm
    return Mat._from_rows(size, size, data)


def induced_action_on_hl(
    h: LeibnizAlgebra,
    m: Bimodule,
    q: int,
    quotient: QuotientData | None = None,
    cohomology: LeibnizCohomology | None = None,
) -> LieModule:
    """``h_Lie``-module structure on ``HL^q(h, M)`` in the representative basis.

    Checked: the action preserves cocycles and coboundaries, ``Leib(h)``
    acts by zero, and the result satisfies the Lie-module law.
    """
    qd = quotient or lie_quotient(h)
    lc = cohomology or LeibnizCohomology(h, m)
    g = qd.quotient
    space = lc.space(q)
    if space.dim == 0:
        return LieModule(g, 0, [Mat.zeros(0, 0)] * g.dim, name=f"HL^{q}")
    sq = space.splitting
    try:
        per_basis = [sq.induced(cochain_action(h, m, q, x), f"action of {h.labels[x]}") for x in range(h.dim)]
    except InvariantSubspaceError as exc:
        raise InducedActionError(f"HL^{q}: {exc}") from exc

    def combo(v):
        out = Mat.zeros(space.dim, space.dim)
        for i, a in v.items():
            out = out + per_basis[i].scale(a)
        return out

    for z in qd.kernel.vectors():
        if not combo(z).is_zero():
            raise InducedActionError(f"HL^{q}: Leib(h) does not act by zero")
    mod = LieModule(g, space.dim, [combo(qd.section_vector(a)) for a in range(g.dim)], name=f"HL^{q}")
    if not check_module(mod).ok:
        raise InducedActionError(f"HL^{q}: induced action violates the Lie-module law")
    return mod
