"""Row reduction over a finite field given as a :class:`~sl12gen.gf.GF`.

Rows are lists of element codes. These helpers are shared by the field
tower (minimal-polynomial oracle) and the matrix layer.
"""

from __future__ import annotations


def rref(F, rows):
    """Reduced row-echelon form of ``rows`` (list of lists).

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    mul, sub, inv = F.mul, F.sub, F.inv
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = inv(rows[r][c])
        prow = [mul(s, v) for v in rows[r]]
        rows[r] = prow
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                k = rows[i][c]
                rows[i] = [sub(a, mul(k, b)) if b else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(F, rows, ncols):
    """Basis of ``{v : rows . v = 0}`` as a list of vectors, in RREF."""
    reduced, pivots = rref(F, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = F.one
        for row, pc in zip(reduced, pivots):
            if row[fc]:
                v[pc] = F.neg(row[fc])
        basis.append(v)
    if not basis:
        return []
    return rref(F, basis)[0]


def reduce_against(F, echelon, pivots, vec):
    """Remainder of ``vec`` after eliminating it against an RREF basis."""
    v = list(vec)
    mul, sub = F.mul, F.sub
    for row, pc in zip(echelon, pivots):
        k = v[pc]
        if k:
            v = [sub(a, mul(k, b)) if b else a for a, b in zip(v, row)]
    return v
