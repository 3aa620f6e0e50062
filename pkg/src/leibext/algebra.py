"""Leibniz algebras given by structure constants.

An algebra of dimension ``n`` stores its bracket on basis elements as
``brackets[(i, j)] = {k: c}`` meaning ``[e_i, e_j] = sum_k c e_k``.  The left
Leibniz identity is ``[x, [y, z]] = [[x, y], z] + [y, [x, z]]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING, Mapping, Sequence

from .exactlin import (
    Mat,
    Subspace,
    _Echelon,
    _integer_row,
    column_space,
    kernel_basis,
    rank,
    solve,
)

if TYPE_CHECKING:
    from .bimodule import LieModule

__all__ = [
    "LeibnizAlgebra",
    "LieAlgebra",
    "QuotientData",
    "ValidationReport",
    "SimplicityVerdict",
    "IrreducibilityVerdict",
    "InternalConsistencyError",
    "validate_leibniz",
    "leibniz_kernel",
    "lie_quotient",
    "killing_form",
    "ideal_closure",
    "derived_algebra",
    "is_simple_leibniz",
    "absolutely_irreducible",
    "spin",
    "commutant",
    "multiplicity",
]


class InternalConsistencyError(RuntimeError):
    pass


def _clean_brackets(n: int, brackets: Mapping[tuple[int, int], Mapping[int, object]]) -> dict:
    out = {}
    for (i, j), terms in brackets.items():
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"bracket index ({i}, {j}) out of range for dim {n}")
        clean = {}
        for k, v in terms.items():
            if not 0 <= k < n:
                raise ValueError(f"term index {k} out of range for dim {n}")
            v = Fraction(v)
            if v:
                clean[k] = v
        if clean:
            out[(i, j)] = clean
    return out


@dataclass(frozen=True, eq=False)
class LeibnizAlgebra:
    dim: int
    labels: tuple[str, ...]
    brackets: Mapping[tuple[int, int], Mapping[int, Fraction]] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if len(self.labels) != self.dim:
            raise ValueError("need one label per basis element")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "brackets", _clean_brackets(self.dim, self.brackets))

    def c(self, i: int, j: int, k: int) -> Fraction:
        return self.brackets.get((i, j), {}).get(k, Fraction(0))

    def basis_bracket(self, i: int, j: int) -> Mapping[int, Fraction]:
        return self.brackets.get((i, j), {})

    def bracket(self, u: Mapping[int, object], v: Mapping[int, object]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, a in u.items():
            if not a:
                continue
            for j, b in v.items():
                if not b:
                    continue
                for k, c in self.basis_bracket(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: Fraction(v) for k, v in out.items() if v}

    @cached_property
    def left_mults(self) -> tuple[Mat, ...]:
        """``L_i``: column ``j`` holds ``[e_i, e_j]``."""
        n = self.dim
        return tuple(
            Mat.from_columns(n, [self.basis_bracket(i, j) for j in range(n)]) for i in range(n)
        )

    @cached_property
    def right_mults(self) -> tuple[Mat, ...]:
        """``R_i``: column ``j`` holds ``[e_j, e_i]``."""
        n = self.dim
        return tuple(
            Mat.from_columns(n, [self.basis_bracket(j, i) for j in range(n)]) for i in range(n)
        )

    def left_mult(self, v: Mapping[int, object]) -> Mat:
        out = Mat.zeros(self.dim, self.dim)
        for i, a in v.items():
            if a:
                out = out + self.left_mults[i].scale(a)
        return out

    def is_antisymmetric(self) -> bool:
        for (i, j), terms in self.brackets.items():
            other = self.basis_bracket(j, i)
            if any(other.get(k, 0) != -v for k, v in terms.items()):
                return False
            if any(k not in terms for k in other):
                return False
        return True

    def same_structure(self, other: "LeibnizAlgebra") -> bool:
        return self.dim == other.dim and dict(self.brackets) == dict(other.brackets)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name or 'dim=%d' % self.dim})"


class LieAlgebra(LeibnizAlgebra):
    def __post_init__(self):
        super().__post_init__()
        if not self.is_antisymmetric():
            raise ValueError("bracket is not antisymmetric")


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_leibniz(h: LeibnizAlgebra) -> ValidationReport:
    """Report every basis triple ``(i, j, k)`` violating the left Leibniz identity."""
    n = h.dim
    L = h.left_mults
    bad = []
    for i in range(n):
        for j in range(n):
            lhs = L[i] @ L[j] - L[j] @ L[i]
            for k, c in h.basis_bracket(i, j).items():
                lhs = lhs - L[k].scale(c)
            if not lhs.is_zero():
                cols = sorted({c for _, c, _ in lhs.items()})
                bad.extend((i, j, k) for k in cols)
    return ValidationReport(tuple(sorted(bad)), n**3)


def ideal_closure(h: LeibnizAlgebra, seed: Subspace) -> Subspace:
    """Smallest two-sided ideal containing ``seed``."""
    n = h.dim
    ech = _Echelon()
    kept = []
    queue = []
    for v in seed.vectors():
        if v and ech.add(_integer_row(v)) is not None:
            kept.append(v)
            queue.append(v)
    ops = h.left_mults + h.right_mults
    while queue:
        v = queue.pop(0)
        vm = Mat.from_columns(n, [v])
        for op in ops:
            w = (op @ vm).column(0)
            if w and ech.add(_integer_row(w)) is not None:
                kept.append(w)
                queue.append(w)
    return Subspace(n, Mat.from_columns(n, kept), _trusted=True)


def leibniz_kernel(h: LeibnizAlgebra) -> Subspace:
    """``Leib(h)``: ideal generated by squares, via the polarizations ``[x,y]+[y,x]``."""
    n = h.dim
    gens = []
    for i in range(n):
        for j in range(i, n):
            v = dict(h.basis_bracket(i, j))
            for k, c in h.basis_bracket(j, i).items():
                v[k] = v.get(k, 0) + c
            gens.append(v)
    return ideal_closure(h, Subspace.span(n, gens))


def derived_algebra(h: LeibnizAlgebra) -> Subspace:
    return Subspace.span(h.dim, [h.basis_bracket(i, j) for i in range(h.dim) for j in range(h.dim)])


@dataclass(frozen=True, eq=False)
class QuotientData:
    kernel: Subspace
    quotient: LieAlgebra
    projection: Mat
    section: Mat

    def section_vector(self, a: int) -> dict[int, Fraction]:
        return self.section.column(a)


def lie_quotient(h: LeibnizAlgebra) -> QuotientData:
    """Canonical Lie quotient ``h / Leib(h)`` with a fixed linear section."""
    n = h.dim
    K = leibniz_kernel(h)
    ech = _Echelon()
    for v in K.vectors():
        ech.add(_integer_row(v))
    complement = []
    for j in range(n):
        if ech.add({j: 1}) is not None:
            complement.append(j)
    q = len(complement)
    section = Mat.from_columns(n, [{j: 1} for j in complement])
    frame = K.basis.hstack(section)
    coords = solve(frame, Mat.identity(n))
    if coords is None:
        raise InternalConsistencyError("kernel and section do not span the algebra")
    projection = coords.select_rows(list(range(K.dim, n)))
    brackets = {}
    for a, b in itertools.product(range(q), repeat=2):
        img = Mat.from_columns(n, [h.bracket({complement[a]: 1}, {complement[b]: 1})])
        col = (projection @ img).column(0)
        if col:
            brackets[(a, b)] = col
    labels = tuple(h.labels[j] for j in complement)
    try:
        g = LieAlgebra(q, labels, brackets, name=f"{h.name}_Lie" if h.name else "")
    except ValueError as exc:
        raise InternalConsistencyError(f"quotient bracket is not antisymmetric: {exc}") from exc
    if projection @ section != Mat.identity(q):
        raise InternalConsistencyError("projection does not split the section")
    return QuotientData(K, g, projection, section)


def killing_form(g: LieAlgebra) -> tuple[Mat, bool]:
    ad = g.left_mults
    n = g.dim
    k = Mat.from_dense([[(ad[i] @ ad[j]).trace() for j in range(n)] for i in range(n)], cols=n)
    return k, rank(k) == n


# -- representations ----------------------------------------------------------


def spin(v: Mapping[int, object], action: Sequence[Mat], m: int) -> Subspace:
    """Smallest subspace containing ``v`` and stable under ``action``."""
    ech = _Echelon()
    kept = []
    queue = []
    if v and ech.add(_integer_row(v)) is not None:
        kept.append(dict(v))
        queue.append(dict(v))
    while queue:
        w = Mat.from_columns(m, [queue.pop(0)])
        for a in action:
            u = (a @ w).column(0)
            if u and ech.add(_integer_row(u)) is not None:
                kept.append(u)
                queue.append(u)
    return Subspace(m, Mat.from_columns(m, kept), _trusted=True)


def _flat(a: Mat) -> dict[int, Fraction]:
    return {r * a.cols + c: v for r, c, v in a.items()}


def _enveloping_closure(action: Sequence[Mat], m: int) -> list[Mat]:
    """Basis of the unital associative algebra generated by ``action``."""
    ech = _Echelon()
    ident = Mat.identity(m)
    ech.add(_integer_row(_flat(ident)))
    basis = [ident]
    frontier = [ident]
    rounds = 0
    while frontier and rounds <= m * m + 1:
        rounds += 1
        nxt = []
        for a in frontier:
            for g in action:
                p = g @ a
                f = _flat(p)
                if f and ech.add(_integer_row(f)) is not None:
                    basis.append(p)
                    nxt.append(p)
        frontier = nxt
        if len(basis) == m * m:
            break
    return basis


@dataclass(frozen=True)
class IrreducibilityVerdict:
    status: str  # "yes" | "no" | "inconclusive"
    closure_dim: int
    witness: Subspace | None = None

    @property
    def is_yes(self) -> bool:
        return self.status == "yes"


def absolutely_irreducible(action: Sequence[Mat], m: int | None = None) -> IrreducibilityVerdict:
    """Burnside test: the action generates all ``m x m`` matrices."""
    if m is None:
        if not action:
            raise ValueError("dimension needed for an empty action")
        m = action[0].rows
    if any(a.shape != (m, m) for a in action):
        raise ValueError("action matrices must be square of equal size")
    if m == 0:
        return IrreducibilityVerdict("no", 0, None)
    closure = _enveloping_closure(action, m)
    if len(closure) == m * m:
        return IrreducibilityVerdict("yes", m * m)
    candidates = [{j: 1} for j in range(m)]
    for a in closure:
        candidates.extend(kernel_basis(a).vectors())
    for v in candidates:
        sub = spin(v, action, m)
        if 0 < sub.dim < m:
            return IrreducibilityVerdict("no", len(closure), sub)
    return IrreducibilityVerdict("inconclusive", len(closure))


def _intertwiner_system(src: Sequence[Mat], dst: Sequence[Mat]) -> Mat:
    """Rows of ``dst_x phi - phi src_x = 0`` in row-major ``vec(phi)``."""
    ms = src[0].rows if src else 0
    md = dst[0].rows if dst else 0
    blocks = [
        d.kron(Mat.identity(ms)) - Mat.identity(md).kron(s.T) for s, d in zip(src, dst)
    ]
    if not blocks:
        return Mat.zeros(0, ms * md)
    return blocks[0].vstack(*blocks[1:])


def intertwiners(src: Sequence[Mat], dst: Sequence[Mat], src_dim: int, dst_dim: int) -> Subspace:
    if not src:
        return Subspace.full(src_dim * dst_dim)
    return kernel_basis(_intertwiner_system(src, dst))


def commutant(action: Sequence[Mat], m: int) -> list[Mat]:
    """Basis of the endomorphisms commuting with every action matrix."""
    sub = intertwiners(action, action, m, m)
    return [
        Mat.from_dense([[col.get(r * m + c, 0) for c in range(m)] for r in range(m)], cols=m)
        for col in sub.vectors()
    ]


def multiplicity(simple: "LieModule", w: "LieModule") -> int:
    """``dim Hom_g(simple, w)``."""
    if simple.algebra.dim != w.algebra.dim:
        raise ValueError("modules over different algebras")
    return intertwiners(simple.rho, w.rho, simple.dim, w.dim).dim


# -- simplicity --------------------------------------------------------------


@dataclass(frozen=True)
class SimplicityVerdict:
    status: str  # "simple-certified" | "not-simple" | "not-certified"
    reason: str = ""
    witness: Subspace | None = None
    constituents: tuple[Subspace, ...] = ()

    def __str__(self) -> str:
        return self.status if not self.reason else f"{self.status} ({self.reason})"


def _two_sided(h: LeibnizAlgebra, sub: Subspace) -> bool:
    if sub.dim == 0:
        return True
    ops = h.left_mults + h.right_mults
    return all(sub.contains_subspace(column_space(op @ sub.basis)) for op in ops)


def _search_witness(h: LeibnizAlgebra, leib: Subspace) -> Subspace | None:
    n = h.dim
    for j in range(n):
        idl = ideal_closure(h, Subspace.span(n, [{j: 1}]))
        if 0 < idl.dim < n and idl != leib:
            return idl
    return None


def _split_constituents(action: Sequence[Mat], n: int, comm: list[Mat]) -> list[Subspace] | None:
    """Eigenspaces of a generic commutant element, if the commutant is split of full rank."""
    import sympy

    d = len(comm)
    x = sympy.Symbol("x")
    for attempt in range(1, 6):
        coeffs = [(j + 1) ** attempt for j in range(d)]
        a = Mat.zeros(n, n)
        for t, cm in zip(coeffs, comm):
            a = a + cm.scale(t)
        dense = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in a.to_dense()])
        _, factors = sympy.factor_list(dense.charpoly(x).as_expr(), x)
        if any(sympy.degree(f, x) != 1 for f, _ in factors):
            continue
        roots = sorted({Fraction(str(sympy.solve(f, x)[0])) for f, _ in factors})
        if len(roots) != d:
            continue
        spaces = [kernel_basis(a - Mat.identity(n).scale(lam)) for lam in roots]
        if sum(s.dim for s in spaces) == n:
            return spaces
    return None


def is_simple_leibniz(h: LeibnizAlgebra, max_constituents: int = 12) -> SimplicityVerdict:
    """Certify simplicity by enumerating sums of left-module constituents."""
    n = h.dim
    leib = leibniz_kernel(h)
    derived = derived_algebra(h)
    if not (derived.contains_subspace(leib) and derived.dim > leib.dim):
        return SimplicityVerdict(
            "not-simple", "Leib(h) is not strictly contained in [h,h]", _search_witness(h, leib)
        )
    qd = lie_quotient(h)
    g = qd.quotient
    _, nondeg = killing_form(g)
    if not nondeg:
        return SimplicityVerdict(
            "not-simple", "Killing form of h_Lie is degenerate", _search_witness(h, leib)
        )
    adj = absolutely_irreducible(g.left_mults, g.dim)
    if adj.status == "no":
        # preimage of an ideal of h_Lie is a two-sided ideal of h
        pre = leib + Subspace(n, qd.section @ adj.witness.basis, _trusted=True)
        return SimplicityVerdict("not-simple", "h_Lie has a proper ideal", pre)
    if adj.status != "yes":
        return SimplicityVerdict("not-certified", "adjoint irreducibility of h_Lie inconclusive")
    action = [h.left_mult(qd.section_vector(a)) for a in range(g.dim)]
    comm = commutant(action, n)
    commutative = all((x @ y) == (y @ x) for x, y in itertools.combinations(comm, 2))
    if not commutative:
        return SimplicityVerdict("not-certified", "left h_Lie-module h is not multiplicity-free")
    if len(comm) > max_constituents:
        return SimplicityVerdict("not-certified", f"more than {max_constituents} constituents")
    parts = _split_constituents(action, n, comm)
    if parts is None:
        return SimplicityVerdict("not-certified", "could not split h into absolutely irreducible constituents")
    for p in parts:
        restricted = [solve(p.basis, a @ p.basis) for a in action]
        if not absolutely_irreducible(restricted, p.dim).is_yes:
            return SimplicityVerdict("not-certified", "constituent is not absolutely irreducible")
    for r in range(1, len(parts)):
        for combo in itertools.combinations(parts, r):
            sub = combo[0]
            for p in combo[1:]:
                sub = sub + p
            if sub == leib or sub.dim in (0, n):
                continue
            if _two_sided(h, sub):
                return SimplicityVerdict("not-simple", "proper two-sided ideal", sub, tuple(parts))
    return SimplicityVerdict("simple-certified", "", None, tuple(parts))
