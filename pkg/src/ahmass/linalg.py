"""Sparse exact linear algebra over Q and Q(i).

Matrices are lists of sparse rows (dict column -> coefficient).  The
elimination is fraction free in the practical sense: every row is scaled
to integer entries and divided by their gcd after each update, which
keeps coefficient growth under control on the large, very sparse
constraint systems produced by the tensor modules (10^3..10^4 unknowns).

Provided operations: row echelon form, nullspace with exact basis
vectors, minimum-support linear solve (free variables pinned to zero),
repeated coordinate solves against a fixed spanning set, and Sylvester
signature of a symmetric form by exact congruence diagonalization.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence, Tuple

from .gaussian import GaussianRational

Row = Dict[int, object]


def _exact(c):
    if isinstance(c, (GaussianRational, Fraction)):
        return c
    return Fraction(c)


def _normalize_row(row: Row) -> Row:
    """Scale a row to integer content with gcd 1 (sign left alone)."""
    if not row:
        return row
    row = {k: _exact(c) for k, c in row.items()}
    dens = []
    for c in row.values():
        if isinstance(c, GaussianRational):
            dens.append(c.re.denominator)
            dens.append(c.im.denominator)
        else:
            dens.append(c.denominator)
    scale = 1
    for d in dens:
        scale = scale * d // gcd(scale, d)
    nums = []
    for c in row.values():
        if isinstance(c, GaussianRational):
            nums.append(int(c.re * scale))
            nums.append(int(c.im * scale))
        else:
            nums.append(int(c * scale))
    g = 0
    for v in nums:
        g = gcd(g, abs(v))
    if g == 0:
        return {}
    factor = Fraction(scale, g)
    if factor == 1:
        return row
    return {k: c * factor for k, c in row.items()}


class Echelon:
    """Forward row-echelon reduction of a sparse matrix.

    Pivot columns are chosen left to right (deterministic); among the
    rows available for a pivot the sparsest is used to limit fill-in.
    """

    def __init__(self, rows: Sequence[Row], ncols: int):
        self.ncols = ncols
        self.pivots: List[Tuple[int, Row]] = []  # (pivot column, reduced row)
        work = [_normalize_row(dict(r)) for r in rows if r]
        # column -> list of active row ids
        by_col: Dict[int, set] = {}
        for idx, r in enumerate(work):
            for c in r:
                by_col.setdefault(c, set()).add(idx)
        active = set(range(len(work)))

        for col in range(ncols):
            holders = [
                i for i in by_col.get(col, ()) if i in active and col in work[i]
            ]
            if not holders:
                continue
            piv = min(holders, key=lambda i: (len(work[i]), i))
            prow = work[piv]
            pval = prow[col]
            active.discard(piv)
            for i in holders:
                if i == piv or i not in active:
                    continue
                r = work[i]
                f = r[col] / pval
                for c, v in prow.items():
                    nv = r.get(c, 0) - f * v
                    if nv:
                        if c not in r:
                            by_col.setdefault(c, set()).add(i)
                        r[c] = nv
                    else:
                        if c in r:
                            del r[c]
                work[i] = _normalize_row(r)
            self.pivots.append((col, prow))
        # rows never touched by a pivot are identically zero by now
        self.pivot_cols = [c for c, _ in self.pivots]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def free_columns(self) -> List[int]:
        pc = set(self.pivot_cols)
        return [c for c in range(self.ncols) if c not in pc]

    def back_substitute(self, seed: Row) -> Row:
        """Complete a partial assignment on free columns to a kernel vector."""
        v = dict(seed)
        for col, prow in reversed(self.pivots):
            s = 0
            for c, coef in prow.items():
                if c == col:
                    continue
                val = v.get(c)
                if val is not None:
                    s = s + coef * val
            if s:
                v[col] = -s / prow[col]
        return v


def nullspace(rows: Sequence[Row], ncols: int) -> List[Row]:
    """Exact basis of the right kernel, one vector per free column.

    Each returned vector is a sparse dict; the seed entry of vector ``j``
    is 1 on its free column, so the basis is in echelon position and the
    vectors are linearly independent.
    """
    ech = Echelon(rows, ncols)
    basis = []
    for f in ech.free_columns():
        v = ech.back_substitute({f: Fraction(1)})
        basis.append({k: c for k, c in v.items() if c})
    return basis


def rank(rows: Sequence[Row], ncols: int) -> int:
    return Echelon(rows, ncols).rank


def matvec(rows: Sequence[Row], vec: Row) -> Row:
    out: Row = {}
    for i, r in enumerate(rows):
        s = 0
        for c, coef in r.items():
            val = vec.get(c)
            if val is not None:
                s = s + coef * val
        if s:
            out[i] = s
    return out


def solve_min_support(rows: Sequence[Row], ncols: int, rhs: Sequence) -> Row:
    """Solve ``A x = b`` exactly, pinning all free variables to zero.

    Raises ``ValueError`` when the system is inconsistent.  Deterministic:
    the echelon form fixes which variables are free.
    """
    aug = []
    for i, r in enumerate(rows):
        row = dict(r)
        b = rhs[i]
        if b:
            row[ncols] = b
        aug.append(row)
    ech = Echelon(aug, ncols + 1)
    sol: Row = {}
    for col, prow in reversed(ech.pivots):
        if col == ncols:
            raise ValueError("inconsistent linear system")
        s = prow.get(ncols, 0)
        for c, coef in prow.items():
            if c in (col, ncols):
                continue
            val = sol.get(c)
            if val is not None:
                s = s - coef * val
        if s:
            sol[col] = s / prow[col]
    return sol


class SpanSolver:
    """Coordinates of vectors in the span of a fixed list of vectors.

    The spanning vectors are echelonized once; each query then costs one
    sparse reduction.  Used for membership tests and for expressing the
    image of an operator back in a chosen basis.
    """

    def __init__(self, vectors: Sequence[Row]):
        self.m = len(vectors)
        # each echelon row carries the combination of input vectors it is
        self.rows: List[Tuple[int, Row, Row]] = []  # (lead col, row, combo)
        for j, vec in enumerate(vectors):
            r = dict(vec)
            combo: Row = {j: Fraction(1)}
            self._reduce(r, combo)
            if r:
                lead = min(r)
                self.rows.append((lead, r, combo))
                self.rows.sort(key=lambda t: t[0])
            else:
                raise ValueError("spanning set is linearly dependent")

    def _reduce(self, r: Row, combo: Row):
        # single pass in increasing lead order: eliminating one lead can
        # only create entries at strictly later columns
        for lead, row, rcombo in self.rows:
            val = r.get(lead)
            if val:
                f = val / row[lead]
                for c, v in row.items():
                    nv = r.get(c, 0) - f * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
                for c, v in rcombo.items():
                    nv = combo.get(c, 0) - f * v
                    if nv:
                        combo[c] = nv
                    else:
                        combo.pop(c, None)

    def coordinates(self, vec: Row) -> Row:
        """Express ``vec`` in the spanning set; raises if not in the span."""
        r = dict(vec)
        combo: Row = {}
        self._reduce(r, combo)
        if r:
            raise ValueError("vector not in span")
        return {k: -v for k, v in combo.items()}

    def contains(self, vec: Row) -> bool:
        r = dict(vec)
        combo: Row = {}
        self._reduce(r, combo)
        return not r


def signature_of_form(gram: Sequence[Sequence], dim: int | None = None) -> Tuple[int, int, int]:
    """Sylvester signature (n+, n-, n0) of a symmetric rational matrix.

    Exact congruence diagonalization: symmetric pivoting with the
    standard rank-one update G <- G - (r x r)/d.  Zero diagonals with a
    nonzero row are repaired by a symmetric row/column addition.
    """
    if dim is None:
        dim = len(gram)
    G: Dict[int, Dict[int, Fraction]] = {}
    for i in range(dim):
        for j in range(dim):
            v = gram[i][j]
            if isinstance(v, GaussianRational):
                if v.im != 0:
                    raise ValueError("signature_of_form needs a real symmetric matrix")
                v = v.re
            if v:
                if gram[j][i] != gram[i][j]:
                    raise ValueError("non-symmetric input")
                G.setdefault(i, {})[j] = Fraction(v)
    active = set(range(dim))
    n_plus = n_minus = 0
    while True:
        piv = None
        best = None
        for i in list(active):
            row = G.get(i)
            if not row:
                continue
            d = row.get(i)
            if d:
                size = len(row)
                if best is None or size < best:
                    best, piv = size, i
        if piv is None:
            # no usable diagonal: look for an off-diagonal entry
            cand = None
            for i in active:
                row = G.get(i)
                if row:
                    j = next(iter(row))
                    cand = (i, j)
                    break
            if cand is None:
                break
            i, j = cand
            # row/col i += row/col j makes G[i][i] = 2 G[i][j] != 0
            rowj = G.get(j, {})
            for c, v in list(rowj.items()):
                G.setdefault(i, {})[c] = G.get(i, {}).get(c, Fraction(0)) + v
                if not G[i][c]:
                    del G[i][c]
            for r in list(G):
                v = G[r].get(j)
                if v:
                    G[r][i] = G[r].get(i, Fraction(0)) + v
                    if not G[r][i]:
                        del G[r][i]
            continue
        row = G.pop(piv)
        active.discard(piv)
        d = row[piv]
        if d > 0:
            n_plus += 1
        else:
            n_minus += 1
        items = [(k, v) for k, v in row.items() if k != piv]
        for k, vk in items:
            Gk = G.get(k)
            if Gk is None:
                continue
            Gk.pop(piv, None)
            for l, vl in items:
                if l < k:
                    continue
                delta = vk * vl / d
                cur = Gk.get(l, Fraction(0)) - delta
                if cur:
                    Gk[l] = cur
                else:
                    Gk.pop(l, None)
                if l != k:
                    Gl = G.get(l)
                    if Gl is not None:
                        if cur:
                            Gl[k] = cur
                        else:
                            Gl.pop(k, None)
        # rows that became empty count as radical at the end
    n_zero = dim - n_plus - n_minus
    return (n_plus, n_minus, n_zero)


def dense_to_rows(mat: Sequence[Sequence]) -> List[Row]:
    return [{j: v for j, v in enumerate(r) if v} for r in mat]
