"""Ext groups between bimodules over a Leibniz algebra.

Two routes are available:

* direct (degrees 0 and 1): bimodule homomorphisms, and extension cocycles
  of block upper-triangular actions on ``N + M`` modulo coboundaries;
* spectral: E2 pages of the change-of-rings spectral sequences

      S1:  H^p(h_Lie, Hom(Y, HL^q(h, X)))                 => Ext^{p+q}(Y^a, X)
      S2:  H^p(h_Lie, Hom(Z, Ext^q(U(h_Lie)^s, X)))       => Ext^{p+q}(Z^s, X)

  where ``Ext^q(U(h_Lie)^s, X)`` is ``Ker f`` (q = 0), ``Coker f`` (q = 1)
  and ``Hom(h, HL^{q-1}(h, X))`` (q >= 2) for ``f(m)(x) = [x,m]_L + [m,x]_R``.

A spectral total degree is reported exact only when every nonzero E2 entry
on its diagonal has zero source for each incoming ``d_r`` and zero target
for each outgoing ``d_r`` (r >= 2), judged on the E2 page.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import LeibnizAlgebra, QuotientData, lie_quotient
from .bimodule import (
    Bimodule,
    LieModule,
    Parity,
    adjoint_left_module,
    hom_bimodule_space,
    hom_module,
    left_lie_module,
    lift,
    quotient_module,
    trivial_bimodule,
)
from .catalog import CatalogError, sl2, sl2_irrep
from .cohomology import CECohomology, LeibnizCohomology, induced_action_on_hl
from .exactlin import Mat, Subquotient, column_space, kernel_basis, rank

log = logging.getLogger(__name__)

__all__ = [
    "EquivarianceError",
    "FMapData",
    "NHatData",
    "Prop23Group",
    "E2Page",
    "ExtVerdict",
    "Ext1Result",
    "SimpleBimoduleSpec",
    "ExtTable",
    "ExtEngine",
    "prop23_groups",
    "nhat",
    "ext1_direct",
    "e2_page",
    "ext_certified",
    "ext_table",
    "certify_diagonal",
    "simple_specs",
]


class EquivarianceError(RuntimeError):
    """A map that must intertwine the h_Lie-actions does not."""


@dataclass(frozen=True, eq=False)
class FMapData:
    f: Mat
    kernel_dim: int
    cokernel_dim: int
    kernel: LieModule
    cokernel: LieModule


@dataclass(frozen=True, eq=False)
class NHatData:
    hmap: Mat
    nhat: LieModule


@dataclass(frozen=True, eq=False)
class Prop23Group:
    i: int
    dim: int
    module: LieModule
    description: str


@dataclass(frozen=True, eq=False)
class Ext1Result:
    dim: int
    cocycles: Mat


@dataclass(frozen=True)
class E2Page:
    variant: str
    grid: dict
    rows: dict = field(default_factory=dict)

    def __getitem__(self, pq: tuple[int, int]) -> int:
        return self.grid.get(pq, 0)


@dataclass(frozen=True)
class ExtVerdict:
    degree: int
    status: str  # "exact" | "inconclusive"
    dim: int | None
    method: str  # "direct" | "spectral" | "both-agree" | "disagree"
    diagonal: tuple[int, ...] = ()
    flagged: bool = False
    direct_dim: int | None = None
    spectral_dim: int | None = None

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    def __str__(self) -> str:
        if self.exact:
            s = f"Ext^{self.degree} = {self.dim}  [exact, {self.method}]"
        elif self.diagonal:
            diag = ",".join(map(str, self.diagonal))
            s = f"Ext^{self.degree} = ?  [inconclusive, E2 diagonal ({diag})]"
        else:
            s = f"Ext^{self.degree} = ?  [inconclusive, no spectral route for a mixed source]"
        if self.flagged:
            s += f"  DISAGREEMENT direct={self.direct_dim} spectral={self.spectral_dim}"
        return s


def certify_diagonal(cell: Callable[[int, int], int], n: int, pmax: int) -> tuple[bool, tuple[int, ...]]:
    """Decide whether total degree ``n`` can be read off the E2 page."""
    diag = tuple(cell(p, n - p) for p in range(n + 1))
    for p, d in enumerate(diag):
        if d == 0:
            continue
        q = n - p
        for r in range(2, q + 2):
            if p + r <= pmax and cell(p + r, q - r + 1):
                return False, diag
        for r in range(2, p + 1):
            if cell(p - r, q + r - 1):
                return False, diag
    return True, diag


def _vec_left(a: Mat, inner: int) -> Mat:
    """Matrix of ``X -> a X`` on row-major ``vec(X)`` with ``inner`` columns."""
    return a.kron(Mat.identity(inner))


def _vec_right(b: Mat, outer: int) -> Mat:
    """Matrix of ``X -> X b`` on row-major ``vec(X)`` with ``outer`` rows."""
    return Mat.identity(outer).kron(b.T)


def _place(data: dict, r0: int, c0: int, block: Mat, coeff=1) -> None:
    for r, c, v in block.items():
        row = data.setdefault(r0 + r, {})
        s = row.get(c0 + c, 0) + coeff * v
        if s:
            row[c0 + c] = s
        else:
            row.pop(c0 + c, None)


@dataclass(frozen=True)
class SimpleBimoduleSpec:
    weight: int
    parity: Parity | None = None  # None only for the trivial bimodule

    @property
    def label(self) -> str:
        if self.weight == 0:
            return "k"
        return f"V({self.weight})^{self.parity.value}"

    @classmethod
    def parse(cls, spec: str) -> "SimpleBimoduleSpec":
        s = spec.strip()
        if s.startswith("simple:"):
            s = s[len("simple:"):]
        if s in ("k", "trivial"):
            return cls(0)
        parts = s.split(":")
        if len(parts) != 3 or parts[0] != "V" or not parts[1].isdigit():
            raise ValueError(f"unknown simple bimodule spec {spec!r}")
        m = int(parts[1])
        if m == 0:
            return cls(0)
        return cls(m, Parity.parse(parts[2]))


def simple_specs(max_weight: int) -> list[SimpleBimoduleSpec]:
    """k, V(1)^s, V(1)^a, ..., V(W)^s, V(W)^a."""
    out = [SimpleBimoduleSpec(0)]
    for m in range(1, max_weight + 1):
        out += [SimpleBimoduleSpec(m, Parity.SYMMETRIC), SimpleBimoduleSpec(m, Parity.ANTISYMMETRIC)]
    return out


@dataclass(frozen=True)
class ExtTable:
    algebra: str
    labels: tuple[str, ...]
    max_degree: int
    cells: tuple  # (left label, right label, ExtVerdict)
    warning: str = ""

    @property
    def flags(self) -> int:
        return sum(1 for _, _, v in self.cells if v.flagged)

    def get(self, left: str, right: str, degree: int) -> ExtVerdict:
        for a, b, v in self.cells:
            if a == left and b == right and v.degree == degree:
                return v
        raise KeyError((left, right, degree))


class ExtEngine:
    """Caches cohomology and coefficient modules over one Leibniz algebra.

    Caches are keyed by object identity; each entry keeps its key objects
    alive so identities cannot be recycled while the engine exists.
    """

    def __init__(self, h: LeibnizAlgebra, quotient: QuotientData | None = None):
        self.h = h
        self.qd = quotient or lie_quotient(h)
        self.g = self.qd.quotient
        self.h_adj = adjoint_left_module(h, self.qd)
        self._hl: dict[int, tuple[Bimodule, LeibnizCohomology]] = {}
        self._hl_mod: dict[tuple[int, int], LieModule] = {}
        self._fmap: dict[int, FMapData] = {}
        self._p23: dict[tuple[int, int], Prop23Group] = {}
        self._ce: dict[tuple, tuple[LieModule, CECohomology]] = {}
        self._simple: dict[SimpleBimoduleSpec, Bimodule] = {}

    # -- building blocks ---------------------------------------------------

    def simple(self, spec: SimpleBimoduleSpec) -> Bimodule:
        if spec not in self._simple:
            if spec.weight == 0:
                b = trivial_bimodule(self.h)
            elif not self.g.same_structure(sl2()):
                raise CatalogError(f"{spec.label} needs an algebra whose Lie quotient is sl2 in the basis (e, h, f)")
            else:
                b = lift(sl2_irrep(spec.weight, self.g), spec.parity, self.h, self.qd)
            self._simple[spec] = b
        return self._simple[spec]

    def cohomology(self, x: Bimodule) -> LeibnizCohomology:
        key = id(x)
        if key not in self._hl:
            self._hl[key] = (x, LeibnizCohomology(self.h, x))
        return self._hl[key][1]

    def hl_module(self, x: Bimodule, q: int) -> LieModule:
        key = (id(x), q)
        if key not in self._hl_mod:
            self._hl_mod[key] = induced_action_on_hl(self.h, x, q, self.qd, self.cohomology(x))
        return self._hl_mod[key]

    def left_module(self, x: Bimodule) -> LieModule:
        return left_lie_module(x, self.qd)

    def _check_equivariant(self, f: Mat, src: LieModule, dst: LieModule, what: str) -> None:
        for a in range(self.g.dim):
            if f @ src.rho[a] != dst.rho[a] @ f:
                raise EquivarianceError(f"{what} is not h_Lie-equivariant (basis element {self.g.labels[a]})")

    def fmap(self, x: Bimodule) -> FMapData:
        """``f: M -> Hom(h, HL^0(h, M))``, ``f(m)(y) = [y,m]_L + [m,y]_R``."""
        if id(x) in self._fmap:
            return self._fmap[id(x)]
        n = self.h.dim
        hl0 = self.cohomology(x).space(0)
        hl0_mod = self.hl_module(x, 0)
        columns = []
        for j in range(x.dim):
            col: dict[int, Fraction] = {}
            for y in range(n):
                img = (x.left[y] + x.right[y]).select_columns([j])
                coords = hl0.splitting.coordinates(img) if hl0.dim else Mat.zeros(0, 1)
                if coords is None:
                    raise EquivarianceError("f(m)(y) does not lie in HL^0(h, M)")
                for a, _, v in coords.items():
                    col[a * n + y] = v
            columns.append(col)
        f = Mat.from_columns(hl0.dim * n, columns)
        target = hom_module(self.h_adj, hl0_mod)
        src = self.left_module(x)
        self._check_equivariant(f, src, target, "f")
        K = kernel_basis(f)
        ksq = Subquotient(K.basis)
        kernel = LieModule(self.g, ksq.dim, [ksq.induced(r, "action on Ker f") for r in src.rho], name="Ker f")
        coker, _ = quotient_module(target, f, name="Coker f")
        data = FMapData(f, K.dim, coker.dim, kernel, coker)
        self._fmap[id(x)] = data
        return data

    def prop23(self, x: Bimodule, i: int) -> Prop23Group:
        """``Ext^{i+1}(U(h_Lie)^s, X)`` with its h_Lie-module structure."""
        if i < -1:
            raise ValueError("i must be >= -1")
        key = (id(x), i)
        if key not in self._p23:
            if i == -1:
                mod, desc = self.fmap(x).kernel, "Ker f"
            elif i == 0:
                mod, desc = self.fmap(x).cokernel, "Coker f"
            else:
                hli = self.hl_module(x, i)
                mod = hom_module(self.h_adj, hli) if hli.dim else LieModule(self.g, 0, [Mat.zeros(0, 0)] * self.g.dim)
                desc = f"Hom(h, HL^{i}(h, X))"
            self._p23[key] = Prop23Group(i, mod.dim, mod, desc)
        return self._p23[key]

    def nhat(self, n_bim: Bimodule) -> NHatData:
        """``N^ = Coker(N -> Hom(h, N))``, ``n -> (y -> [y, n]_L)``."""
        if n_bim.parity() not in ("antisymmetric", "trivial"):
            raise ValueError("nhat needs an antisymmetric bimodule")
        n = self.h.dim
        columns = []
        for j in range(n_bim.dim):
            col = {}
            for y in range(n):
                for a, v in n_bim.left[y].column(j).items():
                    col[a * n + y] = v
            columns.append(col)
        hmap = Mat.from_columns(n_bim.dim * n, columns)
        src = self.left_module(n_bim)
        target = hom_module(self.h_adj, src)
        self._check_equivariant(hmap, src, target, "h")
        mod, _ = quotient_module(target, hmap, name="N^")
        return NHatData(hmap, mod)

    # -- direct route ------------------------------------------------------

    def ext1_direct(self, m: Bimodule, nb: Bimodule) -> Ext1Result:
        """Extension cocycles ``(lambda_x, rho_x): M -> N`` modulo coboundaries."""
        h = self.h
        n = h.dim
        dM, dN = m.dim, nb.dim
        blk = dM * dN
        LM, RM, LN, RN = m.left, m.right, nb.left, nb.right
        lam = lambda x: x * blk  # noqa: E731
        rho = lambda x: (n + x) * blk  # noqa: E731
        data: dict[int, dict] = {}
        row = 0
        for x in range(n):
            for y in range(n):
                br = h.basis_bracket(x, y)
                # LLM
                _place(data, row, lam(y), _vec_left(LN[x], dM))
                _place(data, row, lam(x), _vec_right(LM[y], dN))
                _place(data, row, lam(x), _vec_left(LN[y], dM), -1)
                _place(data, row, lam(y), _vec_right(LM[x], dN), -1)
                for k, c in br.items():
                    _place(data, row, lam(k), Mat.identity(blk), -c)
                row += blk
                # LML
                _place(data, row, rho(y), _vec_left(LN[x], dM))
                _place(data, row, lam(x), _vec_right(RM[y], dN))
                _place(data, row, lam(x), _vec_left(RN[y], dM), -1)
                _place(data, row, rho(y), _vec_right(LM[x], dN), -1)
                for k, c in br.items():
                    _place(data, row, rho(k), Mat.identity(blk), -c)
                row += blk
                # MLL
                for k, c in br.items():
                    _place(data, row, rho(k), Mat.identity(blk), c)
                _place(data, row, rho(x), _vec_left(RN[y], dM), -1)
                _place(data, row, rho(y), _vec_right(RM[x], dN), -1)
                _place(data, row, rho(y), _vec_left(LN[x], dM), -1)
                _place(data, row, lam(x), _vec_right(RM[y], dN), -1)
                row += blk
        constraints = Mat._from_rows(row, 2 * n * blk, data)
        cob: dict[int, dict] = {}
        for x in range(n):
            _place(cob, lam(x), 0, _vec_left(LN[x], dM) - _vec_right(LM[x], dN))
            _place(cob, rho(x), 0, _vec_left(RN[x], dM) - _vec_right(RM[x], dN))
        coboundary = Mat._from_rows(2 * n * blk, blk, cob)
        if not (constraints @ coboundary).is_zero():
            raise RuntimeError("coboundaries violate the linearized bimodule axioms")
        Z = kernel_basis(constraints)
        sq = Subquotient(Z.basis, coboundary)
        return Ext1Result(sq.dim, sq.reps)

    # -- spectral route ----------------------------------------------------

    def coefficient(self, variant: str, x: Bimodule, q: int) -> LieModule:
        if variant == "S1":
            return self.hl_module(x, q)
        if variant == "S2":
            return self.prop23(x, q - 1).module
        raise ValueError(f"unknown spectral sequence {variant!r}")

    def e2_cell(self, variant: str, y: LieModule, x: Bimodule, p: int, q: int) -> int:
        if p < 0 or q < 0 or p > self.g.dim:
            return 0
        key = (variant, id(y), id(x), q)
        if key not in self._ce:
            coeff = self.coefficient(variant, x, q)
            hom = hom_module(y, coeff) if coeff.dim else None
            self._ce[key] = (y, hom and CECohomology(self.g, hom))
        cc = self._ce[key][1]
        return cc.dim(p) if cc else 0

    def e2_page(self, variant: str, y: LieModule, x: Bimodule, dtot: int) -> E2Page:
        grid = {}
        rows = {}
        for q in range(dtot + 1):
            coeff = self.coefficient(variant, x, q)
            rows[q] = f"{'HL^%d(h,X)' % q if variant == 'S1' else self.prop23(x, q - 1).description} (dim {coeff.dim})"
            for p in range(dtot - q + 1):
                grid[(p, q)] = self.e2_cell(variant, y, x, p, q)
        return E2Page(variant, grid, rows)

    def spectral_route(self, m: Bimodule) -> str | None:
        par = m.parity()
        if par in ("trivial", "antisymmetric"):
            return "S1"
        if par == "symmetric":
            return "S2"
        return None

    def ext_certified(self, m: Bimodule, nb: Bimodule, nmax: int = 2, method: str = "both") -> list[ExtVerdict]:
        if nmax > 3:
            raise ValueError("certified Ext is limited to degrees <= 3")
        if method not in ("direct", "spectral", "both"):
            raise ValueError(f"unknown method {method!r}")
        variant = self.spectral_route(m)
        y = self.left_module(m) if variant else None
        cell = (lambda p, q: self.e2_cell(variant, y, nb, p, q)) if variant else None
        out = []
        for deg in range(nmax + 1):
            spectral = None
            diag: tuple[int, ...] = ()
            if method in ("spectral", "both") and variant:
                ok, diag = certify_diagonal(cell, deg, self.g.dim)
                spectral = sum(diag) if ok else None
            direct = None
            if method in ("direct", "both") and deg <= 1:
                direct = hom_bimodule_space(m, nb) if deg == 0 else self.ext1_direct(m, nb).dim
            out.append(_verdict(deg, spectral, direct, diag))
        return out

    def ext_table(self, specs: Sequence[SimpleBimoduleSpec], nmax: int = 2, method: str = "both") -> ExtTable:
        mods = [(s.label, self.simple(s)) for s in specs]
        cells = []
        for la, a in mods:
            for lb, b in mods:
                log.info("Ext(%s, %s)", la, lb)
                for v in self.ext_certified(a, b, nmax, method):
                    cells.append((la, lb, v))
        return ExtTable(self.h.name, tuple(l for l, _ in mods), nmax, tuple(cells))


def _verdict(deg: int, spectral: int | None, direct: int | None, diag) -> ExtVerdict:
    if spectral is not None and direct is not None:
        if spectral == direct:
            return ExtVerdict(deg, "exact", spectral, "both-agree", diag, False, direct, spectral)
        return ExtVerdict(deg, "exact", direct, "disagree", diag, True, direct, spectral)
    if spectral is not None:
        return ExtVerdict(deg, "exact", spectral, "spectral", diag, spectral_dim=spectral)
    if direct is not None:
        return ExtVerdict(deg, "exact", direct, "direct", diag, direct_dim=direct)
    return ExtVerdict(deg, "inconclusive", None, "spectral", diag)


# -- module-level entry points ------------------------------------------------


def prop23_groups(m: Bimodule, i: int, engine: ExtEngine | None = None) -> Prop23Group:
    return (engine or ExtEngine(m.algebra)).prop23(m, i)


def nhat(n: Bimodule, engine: ExtEngine | None = None) -> NHatData:
    return (engine or ExtEngine(n.algebra)).nhat(n)


def ext1_direct(m: Bimodule, n: Bimodule, engine: ExtEngine | None = None) -> Ext1Result:
    return (engine or ExtEngine(m.algebra)).ext1_direct(m, n)


def e2_page(variant: str, left: LieModule, right: Bimodule, dtot: int, engine: ExtEngine | None = None) -> E2Page:
    return (engine or ExtEngine(right.algebra)).e2_page(variant, left, right, dtot)


def ext_certified(m: Bimodule, n: Bimodule, nmax: int = 2, method: str = "both", engine: ExtEngine | None = None) -> list[ExtVerdict]:
    return (engine or ExtEngine(m.algebra)).ext_certified(m, n, nmax, method)


def ext_table(h: LeibnizAlgebra, simples: Sequence[SimpleBimoduleSpec], nmax: int = 2, method: str = "both") -> ExtTable:
    return ExtEngine(h).ext_table(simples, nmax, method)
