"""Independent reference computations used to derive expected values.

Everything here works on dense lists of Fractions and evaluates cochains as
functions on tuples, so it shares no code with the sparse implementation.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction


def dense_rank(rows) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def bracket_table(h):
    """Dense structure constants ``c[i][j][k]``."""
    n = h.dim
    return [[[h.c(i, j, k) for k in range(n)] for j in range(n)] for i in range(n)]


def brute_leibniz_violations(c) -> list[tuple[int, int, int]]:
    """Triples where ``[x,[y,z]] != [[x,y],z] + [y,[x,z]]`` on basis vectors."""
    n = len(c)

    def br(u, v):
        out = [Fraction(0)] * n
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                if v[j] == 0:
                    continue
                for k in range(n):
                    out[k] += u[i] * v[j] * c[i][j][k]
        return out

    e = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    bad = []
    for x, y, z in itertools.product(range(n), repeat=3):
        lhs = br(e[x], br(e[y], e[z]))
        rhs = [a + b for a, b in zip(br(br(e[x], e[y]), e[z]), br(e[y], br(e[x], e[z])))]
        if lhs != rhs:
            bad.append((x, y, z))
    return bad


def _apply(mat, vec):
    return [sum(mat[r][k] * vec[k] for k in range(len(vec))) for r in range(len(mat))]


def hl_dims_dense(c, L, R, m, D):
    """Leibniz cohomology dims via the defining formula, cochains as functions on tuples."""
    n = len(c)

    def differential(q):
        src = list(itertools.product(range(n), repeat=q))
        dst = list(itertools.product(range(n), repeat=q + 1))
        cols = []
        for t0, a in itertools.product(range(len(src)), range(m)):
            def w(t, _t0=src[t0], _a=a):
                return [Fraction(int(t == _t0 and i == _a)) for i in range(m)]

            def w_lin(prefix, vec, suffix):
                out = [Fraction(0)] * m
                for k in range(n):
                    if vec[k]:
                        val = w(prefix + (k,) + suffix)
                        out = [o + vec[k] * v for o, v in zip(out, val)]
                return out

            col = []
            for xs in dst:
                val = [Fraction(0)] * m
                for i in range(q):
                    sub = w(xs[:i] + xs[i + 1:])
                    img = _apply(L[xs[i]], sub)
                    val = [v + (-1) ** i * t for v, t in zip(val, img)]
                sub = w(xs[:q])
                img = _apply(R[xs[q]], sub)
                val = [v + (-1) ** (q + 1) * t for v, t in zip(val, img)]
                for i in range(q + 1):
                    for j in range(i + 1, q + 1):
                        b = c[xs[i]][xs[j]]
                        rest = xs[:i] + xs[i + 1:]
                        pos = j - 1
                        img = w_lin(rest[:pos], b, rest[pos + 1:])
                        val = [v + (-1) ** (i + 1) * t for v, t in zip(val, img)]
                col.extend(val)
            cols.append(col)
        return [list(r) for r in zip(*cols)] if cols else []

    ranks = {}
    for q in range(D + 1):
        ranks[q] = dense_rank(differential(q))
    dims = []
    for q in range(D + 1):
        dims.append(n ** q * m - ranks[q] - (ranks[q - 1] if q else 0))
    return dims


def ce_dims_dense(c, rho, m, D):
    """Chevalley-Eilenberg dims with alternating cochains stored on sorted tuples."""
    n = len(c)

    def sorted_sign(t):
        if len(set(t)) < len(t):
            return 0, None
        s = 1
        t = list(t)
        for i in range(len(t)):
            for j in range(len(t) - 1 - i):
                if t[j] > t[j + 1]:
                    t[j], t[j + 1] = t[j + 1], t[j]
                    s = -s
        return s, tuple(t)

    def differential(p):
        src = list(itertools.combinations(range(n), p))
        dst = list(itertools.combinations(range(n), p + 1))
        cols = []
        for t0, a in itertools.product(range(len(src)), range(m)):
            def w(t, _t0=src[t0], _a=a):
                s, key = sorted_sign(t)
                if s == 0 or key != _t0:
                    return [Fraction(0)] * m
                return [Fraction(s * int(i == _a)) for i in range(m)]

            col = []
            for xs in dst:
                val = [Fraction(0)] * m
                for i in range(p + 1):
                    img = _apply(rho[xs[i]], w(xs[:i] + xs[i + 1:]))
                    val = [v + (-1) ** i * t for v, t in zip(val, img)]
                for i in range(p + 1):
                    for j in range(i + 1, p + 1):
                        rest = tuple(x for k, x in enumerate(xs) if k not in (i, j))
                        for k, ck in enumerate(c[xs[i]][xs[j]]):
                            if ck:
                                img = w((k,) + rest)
                                val = [v + (-1) ** (i + j) * ck * t for v, t in zip(val, img)]
                col.extend(val)
            cols.append(col)
        return [list(r) for r in zip(*cols)] if cols else []

    from math import comb

    ranks = {q: dense_rank(differential(q)) if q < n else 0 for q in range(D + 1)}
    return [
        comb(n, q) * m - ranks[q] - (ranks[q - 1] if q else 0) if q <= n else 0
        for q in range(D + 1)
    ]


# -- sl2 characters ------------------------------------------------------------


def char_irrep(m: int) -> Counter:
    return Counter({m - 2 * k: 1 for k in range(m + 1)})


def char_sum(*chars) -> Counter:
    out = Counter()
    for ch in chars:
        out.update(ch)
    return out


def char_tensor(a: Counter, b: Counter) -> Counter:
    out = Counter()
    for wa, ma in a.items():
        for wb, mb in b.items():
            out[wa + wb] += ma * mb
    return out


def char_minus(a: Counter, b: Counter) -> Counter:
    out = Counter(a)
    out.subtract(b)
    if any(v < 0 for v in out.values()):
        raise ValueError("character difference is not effective")
    return +out


def decompose(ch: Counter) -> dict[int, int]:
    """Highest-weight multiplicities: mult(m) = wt(m) - wt(m+2)."""
    return {m: ch[m] - ch[m + 2] for m in sorted(w for w in ch if w >= 0) if ch[m] - ch[m + 2]}


def weights_of(h_matrix) -> Counter:
    """Eigenvalue multiset of the Cartan element, via sympy."""
    import sympy

    M = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in h_matrix])
    return Counter({int(k): int(v) for k, v in M.eigenvals().items()})
