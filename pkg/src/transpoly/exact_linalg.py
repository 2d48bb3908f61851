"""Exact integer / rational linear algebra.

Everything here works on plain Python ints (arbitrary precision) or
``fractions.Fraction``. Matrices are sequences of row sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import ShapeError

IntVector = tuple[int, ...]


def as_matrix(rows) -> list[list[int]]:
    """Copy ``rows`` into a list of int lists, checking it is rectangular."""
    m = [[int(v) for v in row] for row in rows]
    if m and any(len(row) != len(m[0]) for row in m):
        raise ShapeError("matrix rows have different lengths")
    return m


def bareiss_determinant(m) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    a = as_matrix(m)
    size = len(a)
    if any(len(row) != size for row in a):
        raise ShapeError(f"determinant needs a square matrix, got {size}x{len(a[0]) if a else 0}")
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for r in range(k + 1, size):
            for c in range(k + 1, size):
                # exact: Sylvester's identity guarantees divisibility
                a[r][c] = (a[r][c] * pivot - a[r][k] * a[k][c]) // prev
            a[r][k] = 0
        prev = pivot
    return sign * a[-1][-1]


def integer_rank(m) -> int:
    """Rank over the rationals, by fraction-free row reduction."""
    a = as_matrix(m)
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank]
        for r in range(rank + 1, len(a)):
            f = a[r][col]
            if f:
                a[r] = [x * p[col] - f * y for x, y in zip(a[r], p)]
        rank += 1
        if rank == len(a):
            break
    return rank


@dataclass(frozen=True)
class LatticeBasis:
    """Row-style Hermite normal form of a sublattice of Z^dim.

    ``rows[k]`` has its pivot (first nonzero entry, positive) in column
    ``pivots[k]``; pivots strictly increase and the entries above each pivot
    lie in ``[0, pivot)``.
    """

    dim: int
    rows: tuple[IntVector, ...]
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def determinant(self) -> int:
        """Index of the lattice inside Z^dim when it has full rank (else 0)."""
        if self.rank < self.dim:
            return 0
        out = 1
        for row, col in zip(self.rows, self.pivots):
            out *= row[col]
        return out


def hermite_basis(vectors: Sequence[Sequence[int]], dim: Optional[int] = None) -> LatticeBasis:
    """HNF basis of the lattice generated by ``vectors``."""
    rows = as_matrix(vectors)
    if dim is None:
        if not rows:
            raise ShapeError("dimension needed for an empty generating set")
        dim = len(rows[0])
    elif rows and len(rows[0]) != dim:
        raise ShapeError(f"vectors have length {len(rows[0])}, expected {dim}")

    rows = [r for r in rows if any(r)]
    basis: list[list[int]] = []
    pivots: list[int] = []
    top = 0
    for col in range(dim):
        # euclid on column `col` among the rows not yet used as pivots
        while True:
            live = [k for k in range(top, len(rows)) if rows[k][col] != 0]
            if len(live) <= 1:
                break
            k_min = min(live, key=lambda k: abs(rows[k][col]))
            p = rows[k_min]
            for k in live:
                if k != k_min:
                    q = rows[k][col] // p[col]
                    rows[k] = [x - q * y for x, y in zip(rows[k], p)]
        live = [k for k in range(top, len(rows)) if rows[k][col] != 0]
        if not live:
            continue
        k = live[0]
        rows[top], rows[k] = rows[k], rows[top]
        if rows[top][col] < 0:
            rows[top] = [-x for x in rows[top]]
        basis.append(rows[top])
        pivots.append(col)
        top += 1
        rows = rows[:top] + [r for r in rows[top:] if any(r)]

    # reduce entries above each pivot into [0, pivot)
    for k in range(len(basis)):
        col = pivots[k]
        p = basis[k]
        for above in range(k):
            q = basis[above][col] // p[col]
            if q:
                basis[above] = [x - q * y for x, y in zip(basis[above], p)]

    return LatticeBasis(dim, tuple(tuple(r) for r in basis), tuple(pivots))


def lattice_contains(basis: LatticeBasis, x: Sequence[int]) -> bool:
    if len(x) != basis.dim:
        raise ShapeError(f"vector of length {len(x)} against a lattice in Z^{basis.dim}")
    rest = [int(v) for v in x]
    for row, col in zip(basis.rows, basis.pivots):
        if any(rest[c] for c in range(col)):
            return False
        q, rem = divmod(rest[col], row[col])
        if rem:
            return False
        if q:
            rest = [a - q * b for a, b in zip(rest, row)]
    return not any(rest)


def lattice_contains_many(basis: LatticeBasis, points: np.ndarray) -> np.ndarray:
    """Vectorised :func:`lattice_contains` for an int64 array of row vectors.

    Only safe while all intermediate values fit in int64, which holds for
    the small exponent vectors handled here.
    """
    pts = np.array(points, dtype=np.int64, copy=True)
    if pts.ndim != 2 or pts.shape[1] != basis.dim:
        raise ShapeError(f"points must have shape (k, {basis.dim})")
    ok = np.ones(len(pts), dtype=bool)
    done = 0
    for row, col in zip(basis.rows, basis.pivots):
        ok &= ~np.any(pts[:, done:col] != 0, axis=1)
        q, rem = np.divmod(pts[:, col], row[col])
        ok &= rem == 0
        pts -= np.outer(q, np.asarray(row, dtype=np.int64))
        done = col + 1
    ok &= ~np.any(pts[:, done:] != 0, axis=1)
    return ok


def nullspace(m) -> list[list[Fraction]]:
    """Basis of the rational right kernel of ``m`` (rows of the result)."""
    a = [[Fraction(v) for v in row] for row in as_matrix(m)]
    if not a:
        return []
    ncols = len(a[0])
    pivot_cols: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(a)) if a[k][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for k in range(len(a)):
            if k != r and a[k][col] != 0:
                f = a[k][col]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivot_cols.append(col)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivot_cols]
    out = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivot_cols):
            v[pc] = -a[row_idx][fc]
        out.append(v)
    return out


def primitive(v: Sequence[Fraction]) -> IntVector:
    """Scale a rational vector to the primitive integer vector on its ray."""
    from math import gcd, lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


# --- exact rational feasibility -------------------------------------------


def _phase_one(rows: list[list[Fraction]], rhs: list[Fraction], nvars: int) -> Optional[list[Fraction]]:
    """Find y >= 0 with rows @ y = rhs (rhs >= 0) or return None.

    Dense tableau simplex with one artificial per row and Bland's rule, so it
    terminates without cycling.
    """
    m = len(rows)
    width = nvars + m
    tab = [row + [Fraction(int(k == r)) for k in range(m)] + [b] for r, (row, b) in enumerate(zip(rows, rhs))]
    basis = [nvars + r for r in range(m)]
    # objective: minimise sum of artificials; reduced costs = -(sum of rows) on originals
    obj = [Fraction(0)] * (width + 1)
    for row in tab:
        for c in range(nvars):
            obj[c] -= row[c]
        obj[width] -= row[width]

    while True:
        enter = next((c for c in range(width) if obj[c] < 0), None)
        if enter is None:
            break
        best = None
        leave = -1
        for r in range(m):
            a = tab[r][enter]
            if a > 0:
                ratio = tab[r][width] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave < 0:
            # unbounded direction cannot occur for a phase-one objective bounded below by 0
            break
        prow = tab[leave]
        inv = 1 / prow[enter]
        prow = [v * inv for v in prow]
        tab[leave] = prow
        for r in range(m):
            if r != leave and tab[r][enter] != 0:
                f = tab[r][enter]
                tab[r] = [x - f * y for x, y in zip(tab[r], prow)]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, prow)]
        basis[leave] = enter

    if obj[width] != 0:
        return None
    y = [Fraction(0)] * nvars
    for r, b in enumerate(basis):
        if b < nvars:
            y[b] = tab[r][width]
    return y


def feasible_point(
    a_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nvars: Optional[int] = None,
    nonneg: bool = False,
) -> Optional[list[Fraction]]:
    """Exact rational solution of ``a_ub x <= b_ub, a_eq x = b_eq`` or None.

    Variables are free unless ``nonneg``. The returned point is checked
    against every constraint before it is handed back.
    """
    if nvars is None:
        first = list(a_ub) + list(a_eq)
        if not first:
            raise ShapeError("cannot infer the number of variables")
        nvars = len(first[0])
    split = 1 if nonneg else 2

    def expand(row) -> list[Fraction]:
        row = [Fraction(v) for v in row]
        if len(row) != nvars:
            raise ShapeError(f"constraint of length {len(row)}, expected {nvars}")
        return row if nonneg else row + [-v for v in row]

    n_ub = len(a_ub)
    width = split * nvars + n_ub
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for k, (row, b) in enumerate(zip(a_ub, b_ub)):
        slack = [Fraction(0)] * n_ub
        slack[k] = Fraction(1)
        rows.append(expand(row) + slack)
        rhs.append(Fraction(b))
    for row, b in zip(a_eq, b_eq):
        rows.append(expand(row) + [Fraction(0)] * n_ub)
        rhs.append(Fraction(b))
    for k in range(len(rows)):
        if rhs[k] < 0:
            rows[k] = [-v for v in rows[k]]
            rhs[k] = -rhs[k]

    if not rows:
        return [Fraction(0)] * nvars
    y = _phase_one(rows, rhs, width)
    if y is None:
        return None
    x = y[:nvars] if nonneg else [p - q for p, q in zip(y[:nvars], y[nvars : 2 * nvars])]

    for row, b in zip(a_ub, b_ub):
        assert sum(Fraction(a) * v for a, v in zip(row, x)) <= b
    for row, b in zip(a_eq, b_eq):
        assert sum(Fraction(a) * v for a, v in zip(row, x)) == b
    return x
