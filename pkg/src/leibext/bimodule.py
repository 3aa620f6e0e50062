"""Lie modules and Leibniz bimodules, with the constructions between them.

Operators act on column vectors.  A bimodule over ``h`` carries one left
operator ``L[i] = [e_i, -]_L`` and one right operator ``R[i] = [-, e_i]_R``
per basis element of ``h``; the axioms in operator form are

    (LLM)  L_x L_y - L_y L_x = L_[x,y]
    (LML)  L_x R_y = R_y L_x + R_[x,y]
    (MLL)  R_[x,y] = R_y R_x + L_x R_y

Hom spaces ``Hom(Y, W)`` are flattened row-major, ``index = w_row * dim Y + y_col``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .algebra import (
    LeibnizAlgebra,
    LieAlgebra,
    QuotientData,
    ValidationReport,
    intertwiners,
    lie_quotient,
)
from .exactlin import Mat, Subquotient, Subspace, column_space, kernel_basis

__all__ = [
    "Parity",
    "LieModule",
    "Bimodule",
    "M0Data",
    "check_module",
    "check_bimodule",
    "lift",
    "adjoint_bimodule",
    "trivial_bimodule",
    "m0_submodule",
    "dual_module",
    "hom_module",
    "hom_bimodule_space",
    "left_lie_module",
    "adjoint_left_module",
    "trivial_module",
]


class Parity(enum.Enum):
    SYMMETRIC = "s"
    ANTISYMMETRIC = "a"

    @classmethod
    def parse(cls, tag: str) -> "Parity":
        tag = tag.strip().lower()
        for p in cls:
            if tag in (p.value, p.name.lower()):
                return p
        raise ValueError(f"unknown parity {tag!r}")


def _combo(ops: Sequence[Mat], v, m: int) -> Mat:
    out = Mat.zeros(m, m)
    for i, a in v.items():
        if a:
            out = out + ops[i].scale(a)
    return out


@dataclass(frozen=True, eq=False)
class LieModule:
    algebra: LieAlgebra
    dim: int
    rho: tuple[Mat, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))
        if len(self.rho) != self.algebra.dim:
            raise ValueError("need one action matrix per algebra basis element")
        if any(r.shape != (self.dim, self.dim) for r in self.rho):
            raise ValueError(f"action matrices must be {self.dim}x{self.dim}")

    def act(self, v) -> Mat:
        return _combo(self.rho, v, self.dim)

    def __repr__(self) -> str:
        return f"LieModule({self.name or 'dim=%d' % self.dim})"


@dataclass(frozen=True, eq=False)
class Bimodule:
    algebra: LeibnizAlgebra
    dim: int
    left: tuple[Mat, ...]
    right: tuple[Mat, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        n = self.algebra.dim
        if len(self.left) != n or len(self.right) != n:
            raise ValueError("need one left and one right operator per basis element")
        for a in self.left + self.right:
            if a.shape != (self.dim, self.dim):
                raise ValueError(f"operators must be {self.dim}x{self.dim}")

    def parity(self) -> str:
        """One of ``trivial``, ``antisymmetric``, ``symmetric``, ``mixed``."""
        anti = all(r.is_zero() for r in self.right)
        sym = all((l + r).is_zero() for l, r in zip(self.left, self.right))
        if anti and sym:
            return "trivial"
        if anti:
            return "antisymmetric"
        if sym:
            return "symmetric"
        return "mixed"

    def __repr__(self) -> str:
        return f"Bimodule({self.name or 'dim=%d' % self.dim})"


def check_module(m: LieModule) -> ValidationReport:
    """Basis pairs ``(i, j)`` where ``rho_[x,y] != [rho_x, rho_y]``."""
    g = m.algebra
    bad = []
    for i in range(g.dim):
        for j in range(g.dim):
            lhs = m.rho[i] @ m.rho[j] - m.rho[j] @ m.rho[i]
            if lhs != m.act(g.basis_bracket(i, j)):
                bad.append((i, j))
    return ValidationReport(tuple(bad), g.dim**2)


def check_bimodule(b: Bimodule) -> ValidationReport:
    """Every ``(axiom, i, j)`` violating LLM, LML or MLL."""
    h = b.algebra
    L, R = b.left, b.right
    bad = []
    for i in range(h.dim):
        for j in range(h.dim):
            br = h.basis_bracket(i, j)
            Lb, Rb = _combo(L, br, b.dim), _combo(R, br, b.dim)
            if L[i] @ L[j] - L[j] @ L[i] != Lb:
                bad.append(("LLM", i, j))
            if L[i] @ R[j] != R[j] @ L[i] + Rb:
                bad.append(("LML", i, j))
            if Rb != R[j] @ R[i] + L[i] @ R[j]:
                bad.append(("MLL", i, j))
    return ValidationReport(tuple(bad), 3 * h.dim**2)


def trivial_module(g: LieAlgebra, dim: int = 1) -> LieModule:
    return LieModule(g, dim, [Mat.zeros(dim, dim)] * g.dim, name="k" if dim == 1 else "")


def trivial_bimodule(h: LeibnizAlgebra, dim: int = 1) -> Bimodule:
    z = [Mat.zeros(dim, dim)] * h.dim
    return Bimodule(h, dim, z, z, name="k" if dim == 1 else "")


def lift(m: LieModule, parity: Parity | str, h: LeibnizAlgebra, quotient: QuotientData | None = None) -> Bimodule:
    """Bimodule from an ``h_Lie``-module: R = 0 (antisymmetric) or R = -L (symmetric)."""
    if isinstance(parity, str):
        parity = Parity.parse(parity)
    qd = quotient or lie_quotient(h)
    if not qd.quotient.same_structure(m.algebra):
        raise ValueError("module is not over the Lie quotient of this algebra")
    left = []
    for x in range(h.dim):
        left.append(m.act(qd.projection.column(x)))
    if parity is Parity.ANTISYMMETRIC:
        right = [Mat.zeros(m.dim, m.dim)] * h.dim
    else:
        right = [-a for a in left]
    name = f"{m.name}^{parity.value}" if m.name else ""
    return Bimodule(h, m.dim, left, right, name=name)


def adjoint_bimodule(h: LeibnizAlgebra) -> Bimodule:
    return Bimodule(h, h.dim, h.left_mults, h.right_mults, name="adjoint")


def left_lie_module(b: Bimodule, quotient: QuotientData | None = None) -> LieModule:
    """The ``h_Lie``-module given by the left action, read through the section."""
    qd = quotient or lie_quotient(b.algebra)
    rho = [_combo(b.left, qd.section_vector(a), b.dim) for a in range(qd.quotient.dim)]
    return LieModule(qd.quotient, b.dim, rho, name=b.name.split("^")[0] if b.name else "")


def adjoint_left_module(h: LeibnizAlgebra, quotient: QuotientData | None = None) -> LieModule:
    """``h`` as a left ``h_Lie``-module under ``[x, -]``."""
    qd = quotient or lie_quotient(h)
    rho = [h.left_mult(qd.section_vector(a)) for a in range(qd.quotient.dim)]
    return LieModule(qd.quotient, h.dim, rho, name="h")


@dataclass(frozen=True, eq=False)
class M0Data:
    sub: Bimodule
    embedding: Mat
    quotient: Bimodule
    projection: Mat

    @property
    def subspace(self) -> Subspace:
        return Subspace(self.embedding.rows, self.embedding, _trusted=True)


def m0_submodule(b: Bimodule) -> M0Data:
    """``M_0 = span([x,m]_L + [m,x]_R)`` and the quotient ``M / M_0``."""
    n, m = b.algebra.dim, b.dim
    images = Mat.zeros(m, 0)
    for x in range(n):
        images = images.hstack(b.left[x] + b.right[x])
    M0 = column_space(images)
    emb = M0.basis
    sub_sq = Subquotient(emb)
    sub_left = [sub_sq.induced(a, "left action on M_0") for a in b.left]
    sub_right = [sub_sq.induced(a, "right action on M_0") for a in b.right]
    quo_sq = Subquotient(Mat.identity(m), emb)
    q_left = [quo_sq.induced(a, "left action on M/M_0") for a in b.left]
    q_right = [quo_sq.induced(a, "right action on M/M_0") for a in b.right]
    projection = quo_sq.coordinates(Mat.identity(m))
    sub = Bimodule(b.algebra, M0.dim, sub_left, sub_right, name=f"{b.name}_0" if b.name else "")
    quo = Bimodule(b.algebra, quo_sq.dim, q_left, q_right, name=f"{b.name}/M0" if b.name else "")
    return M0Data(sub, emb, quo, projection)


def dual_module(m: LieModule) -> LieModule:
    return LieModule(m.algebra, m.dim, [-r.T for r in m.rho], name=f"{m.name}*" if m.name else "")


def hom_module(y: LieModule, w: LieModule) -> LieModule:
    """``Hom(Y, W)`` with ``(x.F) = rho^W_x F - F rho^Y_x``."""
    if y.algebra.dim != w.algebra.dim:
        raise ValueError("modules over different algebras")
    iy, iw = Mat.identity(y.dim), Mat.identity(w.dim)
    rho = [rw.kron(iy) - iw.kron(ry.T) for ry, rw in zip(y.rho, w.rho)]
    name = f"Hom({y.name},{w.name})" if y.name and w.name else ""
    return LieModule(w.algebra, y.dim * w.dim, rho, name=name)


def hom_bimodule_space(m: Bimodule, n: Bimodule) -> int:
    """``dim Hom_bimod(M, N)`` (= Ext^0)."""
    if m.algebra is not n.algebra and not m.algebra.same_structure(n.algebra):
        raise ValueError("bimodules over different algebras")
    return intertwiners(m.left + m.right, n.left + n.right, m.dim, n.dim).dim


def submodule(m: LieModule, sub: Subspace) -> LieModule:
    sq = Subquotient(sub.basis)
    return LieModule(m.algebra, sq.dim, [sq.induced(r, "action") for r in m.rho])


def quotient_module(m: LieModule, sub: Subspace | Mat, name: str = "") -> tuple[LieModule, Subquotient]:
    basis = sub.basis if isinstance(sub, Subspace) else sub
    sq = Subquotient(Mat.identity(m.dim), basis)
    return LieModule(m.algebra, sq.dim, [sq.induced(r, "action") for r in m.rho], name=name), sq


def invariants(m: LieModule) -> Subspace:
    if not m.rho:
        return Subspace.full(m.dim)
    return kernel_basis(m.rho[0].vstack(*m.rho[1:]))
