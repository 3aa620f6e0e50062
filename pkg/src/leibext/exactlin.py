"""Exact sparse linear algebra over the rationals.

Matrices are stored as ``row -> {col: Fraction}`` maps with no explicit zeros.
Elimination runs on integer rows (fraction-free): each row is cleared of
denominators, combined by cross-multiplication and divided by its content
after every step, so entries stay integral and small on the integer-valued
differentials produced elsewhere in the package.  Pivots are chosen
Markowitz-style to limit fill-in during back elimination.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Sequence

Scalar = Fraction

__all__ = [
    "Scalar",
    "Mat",
    "Subspace",
    "Subquotient",
    "NotAComplexError",
    "InvariantSubspaceError",
    "rank",
    "kernel_basis",
    "solve",
    "subquotient_dim",
    "column_space",
    "independent_columns",
]


class NotAComplexError(ValueError):
    """Raised when two consecutive maps do not compose to zero."""


class InvariantSubspaceError(ValueError):
    """Raised when an operator fails to preserve a subspace it must preserve."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Mat:
    """Immutable sparse matrix with rational entries."""

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        data: dict[int, dict[int, Fraction]] = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
                v = _frac(v)
                if v:
                    data.setdefault(r, {})[c] = v
        self._rows = data

    @classmethod
    def _from_rows(cls, rows: int, cols: int, data: dict[int, dict[int, Fraction]]) -> "Mat":
        # trusted constructor: data already clean
        m = cls.__new__(cls)
        m.rows, m.cols = rows, cols
        m._rows = {r: d for r, d in data.items() if d}
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls._from_rows(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._from_rows(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]], cols: int | None = None) -> "Mat":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else (cols or 0)
        data = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            d = {c: _frac(v) for c, v in enumerate(row) if v}
            if d:
                data[r] = d
        return cls._from_rows(nrows, ncols, data)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, object]]) -> "Mat":
        data: dict[int, dict[int, Fraction]] = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                v = _frac(v)
                if v:
                    if not 0 <= r < nrows:
                        raise IndexError(f"row {r} outside {nrows}")
                    data.setdefault(r, {})[c] = v
        return cls._from_rows(nrows, len(columns), data)

    @classmethod
    def column_vector(cls, values: Sequence[object]) -> "Mat":
        return cls.from_dense([[v] for v in values], cols=1)

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, rc: tuple[int, int]) -> Fraction:
        r, c = rc
        return self._rows.get(r, {}).get(c, Fraction(0))

    def row(self, r: int) -> Mapping[int, Fraction]:
        return self._rows.get(r, {})

    def items(self) -> Iterator[tuple[int, int, Fraction]]:
        for r in sorted(self._rows):
            d = self._rows[r]
            for c in sorted(d):
                yield r, c, d[c]

    def nnz(self) -> int:
        return sum(len(d) for d in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for r, d in self._rows.items():
            for c, v in d.items():
                out[r][c] = v
        return out

    def columns(self) -> list[dict[int, Fraction]]:
        cols: list[dict[int, Fraction]] = [{} for _ in range(self.cols)]
        for r, d in self._rows.items():
            for c, v in d.items():
                cols[c][r] = v
        return cols

    def column(self, j: int) -> dict[int, Fraction]:
        return {r: d[j] for r, d in self._rows.items() if j in d}

    def trace(self) -> Fraction:
        return sum((d.get(r, Fraction(0)) for r, d in self._rows.items()), Fraction(0))

    # -- arithmetic ---------------------------------------------------------

    @property
    def T(self) -> "Mat":
        data: dict[int, dict[int, Fraction]] = {}
        for r, d in self._rows.items():
            for c, v in d.items():
                data.setdefault(c, {})[r] = v
        return Mat._from_rows(self.cols, self.rows, data)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        data = {}
        orows = other._rows
        for r, d in self._rows.items():
            acc: dict[int, Fraction] = defaultdict(Fraction)
            for k, a in d.items():
                ok = orows.get(k)
                if ok:
                    for c, b in ok.items():
                        acc[c] += a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                data[r] = acc
        return Mat._from_rows(self.rows, other.cols, data)

    def _combine(self, other: "Mat", sign: int) -> "Mat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = {r: dict(d) for r, d in self._rows.items()}
        for r, d in other._rows.items():
            row = data.setdefault(r, {})
            for c, v in d.items():
                s = row.get(c, 0) + sign * v
                if s:
                    row[c] = s
                else:
                    row.pop(c, None)
        return Mat._from_rows(self.rows, self.cols, data)

    def __add__(self, other: "Mat") -> "Mat":
        return self._combine(other, 1)

    def __sub__(self, other: "Mat") -> "Mat":
        return self._combine(other, -1)

    def __neg__(self) -> "Mat":
        return self.scale(-1)

    def scale(self, s) -> "Mat":
        s = _frac(s)
        if not s:
            return Mat.zeros(self.rows, self.cols)
        return Mat._from_rows(self.rows, self.cols, {r: {c: s * v for c, v in d.items()} for r, d in self._rows.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.items())))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 36:
            body = [[str(v) for v in row] for row in self.to_dense()]
            return f"Mat({body})"
        return f"Mat({self.rows}x{self.cols}, nnz={self.nnz()})"

    def kron(self, other: "Mat") -> "Mat":
        """Kronecker product with row-major block layout."""
        data: dict[int, dict[int, Fraction]] = {}
        for r1, d1 in self._rows.items():
            for r2, d2 in other._rows.items():
                row = data.setdefault(r1 * other.rows + r2, {})
                for c1, a in d1.items():
                    for c2, b in d2.items():
                        row[c1 * other.cols + c2] = a * b
        return Mat._from_rows(self.rows * other.rows, self.cols * other.cols, data)

    def hstack(self, *others: "Mat") -> "Mat":
        data = {r: dict(d) for r, d in self._rows.items()}
        off = self.cols
        for o in others:
            if o.rows != self.rows:
                raise ValueError("hstack row mismatch")
            for r, d in o._rows.items():
                row = data.setdefault(r, {})
                for c, v in d.items():
                    row[c + off] = v
            off += o.cols
        return Mat._from_rows(self.rows, off, data)

    def vstack(self, *others: "Mat") -> "Mat":
        data = {r: dict(d) for r, d in self._rows.items()}
        off = self.rows
        for o in others:
            if o.cols != self.cols:
                raise ValueError("vstack column mismatch")
            for r, d in o._rows.items():
                data[r + off] = dict(d)
            off += o.rows
        return Mat._from_rows(off, self.cols, data)

    def select_columns(self, idx: Sequence[int]) -> "Mat":
        pos = {c: i for i, c in enumerate(idx)}
        data = {}
        for r, d in self._rows.items():
            row = {pos[c]: v for c, v in d.items() if c in pos}
            if row:
                data[r] = row
        return Mat._from_rows(self.rows, len(idx), data)

    def select_rows(self, idx: Sequence[int]) -> "Mat":
        return Mat._from_rows(len(idx), self.cols, {i: dict(self._rows[r]) for i, r in enumerate(idx) if r in self._rows})


def vstack_all(mats: Sequence[Mat], cols: int) -> Mat:
    if not mats:
        return Mat.zeros(0, cols)
    return mats[0].vstack(*mats[1:])


# -- fraction-free elimination -----------------------------------------------


def _integer_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    den = 1
    for v in row.values():
        den = lcm(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items() if v}
    return _primitive(out)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


class _Echelon:
    """Incremental Gauss-Jordan form on integer rows.

    Every stored pivot row is primitive, has a positive pivot, and is zero in
    every other pivot column.  ``pivot_limit`` restricts pivots to the first
    columns (used for augmented solves).
    """

    def __init__(self, pivot_limit: int | None = None):
        self.pivot_limit = pivot_limit
        self.pivots: dict[int, dict[int, int]] = {}
        self.order: list[int] = []
        self.users: dict[int, set[int]] = defaultdict(set)

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        hits = [c for c in row if c in self.pivots]
        for c in hits:
            a = row.get(c)
            if not a:
                continue
            prow = self.pivots[c]
            p = prow[c]
            g = gcd(a, p)
            fa, fp = p // g, a // g
            new = {k: fa * v for k, v in row.items()}
            for k, v in prow.items():
                s = new.get(k, 0) - fp * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            row = new
        return _primitive(row)

    def add(self, row: dict[int, int]) -> int | None:
        """Insert a row; return its pivot column, or None if it reduced away."""
        row = self.reduce(row)
        if not row:
            return None
        limit = self.pivot_limit
        cands = [c for c in row if limit is None or c < limit]
        if not cands:
            # only augmented columns survive: inconsistent system
            return -1
        users = self.users
        piv = min(cands, key=lambda c: (len(users.get(c, ())), abs(row[c]), c))
        if row[piv] < 0:
            row = {k: -v for k, v in row.items()}
        p = row[piv]
        for q in sorted(users.get(piv, ())):
            prow = self.pivots[q]
            a = prow[piv]
            g = gcd(a, p)
            fa, fp = p // g, a // g
            new = {k: fa * v for k, v in prow.items()}
            for k, v in row.items():
                s = new.get(k, 0) - fp * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            new = _primitive(new)
            if new[q] < 0:
                new = {k: -v for k, v in new.items()}
            for k in prow:
                if k not in new:
                    users[k].discard(q)
            for k in new:
                if k not in prow:
                    users[k].add(q)
            self.pivots[q] = new
        self.pivots[piv] = row
        self.order.append(piv)
        for k in row:
            users[k].add(piv)
        return piv

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _echelon_of_rows(m: Mat, pivot_limit: int | None = None) -> tuple[_Echelon, bool]:
    ech = _Echelon(pivot_limit)
    consistent = True
    for r in range(m.rows):
        d = m.row(r)
        if d:
            if ech.add(_integer_row(d)) == -1:
                consistent = False
    return ech, consistent


def rank(m: Mat) -> int:
    """Exact rank over the rationals."""
    if m.rows == 0 or m.cols == 0 or m.is_zero():
        return 0
    # eliminate along the shorter side
    if m.rows > m.cols:
        m = m.T
    ech, _ = _echelon_of_rows(m)
    return ech.rank


def _kernel_from_echelon(ech: _Echelon, ncols: int) -> Mat:
    free = [c for c in range(ncols) if c not in ech.pivots]
    columns = []
    for f in free:
        v: dict[int, Fraction] = {f: Fraction(1)}
        for q in ech.users.get(f, ()):
            prow = ech.pivots[q]
            v[q] = Fraction(-prow[f], prow[q])
        columns.append(v)
    return Mat.from_columns(ncols, columns)


def kernel_basis(m: Mat) -> "Subspace":
    """Basis of the right null space ``{v : m v = 0}``."""
    ech, _ = _echelon_of_rows(m)
    return Subspace(m.cols, _kernel_from_echelon(ech, m.cols), _trusted=True)


def solve(a: Mat, b: Mat) -> Mat | None:
    """Some ``x`` with ``a @ x == b``, or None when the system is inconsistent."""
    if a.rows != b.rows:
        raise ValueError(f"dimension mismatch: a has {a.rows} rows, b has {b.rows}")
    aug = a.hstack(b)
    ech, consistent = _echelon_of_rows(aug, pivot_limit=a.cols)
    if not consistent:
        return None
    data: dict[int, dict[int, Fraction]] = {}
    for piv, prow in ech.pivots.items():
        p = prow[piv]
        row = {k - a.cols: Fraction(v, p) for k, v in prow.items() if k >= a.cols}
        if row:
            data[piv] = row
    return Mat._from_rows(a.cols, b.cols, data)


def subquotient_dim(d_out: Mat, d_in: Mat) -> int:
    """``dim ker(d_out) - rank(d_in)`` for ``C^{q-1} -> C^q -> C^{q+1}``."""
    if d_out.cols != d_in.rows:
        raise ValueError(f"maps do not compose: {d_out.shape} after {d_in.shape}")
    if not (d_out @ d_in).is_zero():
        raise NotAComplexError("not a complex at this degree: d_out @ d_in != 0")
    return d_out.cols - rank(d_out) - rank(d_in)


def independent_columns(m: Mat) -> list[int]:
    """Indices of a maximal independent set of columns, greedily left to right."""
    ech = _Echelon()
    keep = []
    for j, col in enumerate(m.columns()):
        if col and ech.add(_integer_row(col)) is not None:
            keep.append(j)
    return keep


def column_space(m: Mat) -> "Subspace":
    return Subspace(m.rows, m.select_columns(independent_columns(m)), _trusted=True)


class Subspace:
    """A subspace of ``Q^ambient_dim`` given by independent basis columns."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Mat, _trusted: bool = False):
        if basis.rows != ambient_dim:
            raise ValueError("basis rows must equal the ambient dimension")
        if not _trusted and rank(basis) != basis.cols:
            raise ValueError("basis columns are not linearly independent")
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, Mat.zeros(n, 0), _trusted=True)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Mat.identity(n), _trusted=True)

    @classmethod
    def span(cls, n: int, vectors: Iterable[Mapping[int, object]]) -> "Subspace":
        return column_space(Mat.from_columns(n, list(vectors)))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[dict[int, Fraction]]:
        return self.basis.columns()

    def contains(self, v: Mat) -> bool:
        return solve(self.basis, v) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return other.dim == 0 or rank(self.basis.hstack(other.basis)) == self.dim

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and self.contains_subspace(other)
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.dim))

    def __add__(self, other: "Subspace") -> "Subspace":
        return column_space(self.basis.hstack(other.basis))

    def coordinates(self, v: Mat) -> Mat | None:
        return solve(self.basis, v)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


class Subquotient:
    """The space ``Z / B`` for ``B <= Z <= Q^n`` with chosen representatives.

    Representatives are the columns of ``z`` that stay independent after the
    columns of ``b`` have been eliminated, in column order.
    """

    def __init__(self, z: Mat, b: Mat | None = None):
        n = z.rows
        if b is None:
            b = Mat.zeros(n, 0)
        ech = _Echelon()
        b_keep = []
        for j, col in enumerate(b.columns()):
            if col and ech.add(_integer_row(col)) is not None:
                b_keep.append(j)
        rep_keep = []
        for j, col in enumerate(z.columns()):
            if col and ech.add(_integer_row(col)) is not None:
                rep_keep.append(j)
        self.ambient_dim = n
        self.boundaries = b.select_columns(b_keep)
        self.reps = z.select_columns(rep_keep)
        self.frame = self.boundaries.hstack(self.reps)
        if z.cols and rank(z) != len(b_keep) + len(rep_keep):
            raise InvariantSubspaceError("boundary space is not contained in the cycle space")

    @property
    def dim(self) -> int:
        return self.reps.cols

    def coordinates(self, v: Mat) -> Mat | None:
        """Representative coordinates of the columns of ``v`` (None if not in Z)."""
        x = solve(self.frame, v)
        if x is None:
            return None
        nb = self.boundaries.cols
        return x.select_rows(list(range(nb, nb + self.dim)))

    def induced(self, op: Mat, what: str = "operator") -> Mat:
        """Matrix of ``op`` on ``Z / B`` in the representative basis."""
        images = op @ self.frame
        x = solve(self.frame, images)
        if x is None:
            raise InvariantSubspaceError(f"{what} does not preserve the cycle space")
        nb = self.boundaries.cols
        for r in range(nb, nb + self.dim):
            if any(c < nb for c in x.row(r)):
                raise InvariantSubspaceError(f"{what} does not map boundaries to boundaries")
        return x.select_rows(list(range(nb, nb + self.dim))).select_columns(list(range(nb, nb + self.dim)))
