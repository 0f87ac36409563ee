"""Dense matrices over GF(q) and the explicit generators x, y and z = xy.

Vectors are columns and matrices act by left multiplication. Entry
references in docstrings are 1-based (row, column), as the matrices are
usually printed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import _linalg
from .arith import FactoredInteger
from .gf import GF, AlphaVector, Poly, poly_mul, poly_sub, poly_trim

N = 12


class ConstructionError(AssertionError):
    """A constructed object failed a postcondition that should always hold."""


class Mat:
    """Immutable square matrix over a :class:`GF`, rows of element codes."""

    __slots__ = ("F", "rows", "n")

    def __init__(self, F: GF, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.F = F
        self.rows = rows
        self.n = n

    @classmethod
    def identity(cls, F: GF, n: int = N) -> "Mat":
        return cls(F, [[F.one if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, F: GF, n: int = N) -> "Mat":
        return cls(F, [[0] * n for _ in range(n)])

    @classmethod
    def scalar(cls, F: GF, c: int, n: int = N) -> "Mat":
        return cls(F, [[c if i == j else 0 for j in range(n)] for i in range(n)])

    def __repr__(self):
        return f"Mat({self.F!r}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, Mat) and self.F == other.F and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entry(self, i: int, j: int) -> int:
        """1-based entry access."""
        return self.rows[i - 1][j - 1]

    def __add__(self, other: "Mat") -> "Mat":
        add = self.F.add
        return Mat(self.F, [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        sub = self.F.sub
        return Mat(self.F, [[sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __matmul__(self, other: "Mat") -> "Mat":
        F = self.F
        add, mul = F.add, F.mul
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for col in cols:
                acc = 0
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = add(acc, mul(a, b))
                row.append(acc)
            out.append(row)
        return Mat(F, out)

    def scale(self, c: int) -> "Mat":
        mul = self.F.mul
        return Mat(self.F, [[mul(c, a) for a in r] for r in self.rows])

    def apply(self, v: Sequence[int]) -> list[int]:
        """Matrix times column vector."""
        add, mul = self.F.add, self.F.mul
        out = []
        for r in self.rows:
            acc = 0
            for a, b in zip(r, v):
                if a and b:
                    acc = add(acc, mul(a, b))
            out.append(acc)
        return out

    def __pow__(self, e: int) -> "Mat":
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = Mat.identity(self.F, self.n)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def transpose(self) -> "Mat":
        return Mat(self.F, list(zip(*self.rows)))

    def is_identity(self) -> bool:
        return self == Mat.identity(self.F, self.n)


@dataclass(frozen=True)
class Subspace:
    """Subspace of F^n stored by its reduced row-echelon basis (rows)."""

    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, F: GF, vectors, ambient_dim: int = N) -> "Subspace":
        vectors = [list(v) for v in vectors]
        reduced = _linalg.rref(F, vectors)[0] if vectors else []
        return cls(ambient_dim, tuple(tuple(r) for r in reduced))

    @classmethod
    def zero(cls, ambient_dim: int = N) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def whole(cls, F: GF, ambient_dim: int = N) -> "Subspace":
        return cls.span(F, Mat.identity(F, ambient_dim).rows, ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, c in enumerate(r) if c) for r in self.basis]

    def contains(self, F: GF, v: Sequence[int]) -> bool:
        return not any(_linalg.reduce_against(F, self.basis, self.pivots, v))


def det(a: Mat) -> int:
    """Determinant by Gaussian elimination with row-swap sign tracking."""
    F = a.F
    rows = [list(r) for r in a.rows]
    n = a.n
    result = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = F.neg(result)
        pv = rows[c][c]
        result = F.mul(result, pv)
        inv = F.inv(pv)
        for i in range(c + 1, n):
            k = rows[i][c]
            if k:
                k = F.mul(k, inv)
                rows[i] = [F.sub(x, F.mul(k, y)) for x, y in zip(rows[i], rows[c])]
    return result


def rank(a: Mat) -> int:
    return len(_linalg.rref(a.F, a.rows)[0])


def kernel(a: Mat) -> Subspace:
    """Null space ``{v : a v = 0}`` in canonical echelon form."""
    return Subspace(a.n, tuple(tuple(v) for v in _linalg.nullspace(a.F, a.rows, a.n)))


def char_poly(a: Mat) -> Poly:
    """det(tI - a) via reduction to upper Hessenberg form."""
    F = a.F
    add, sub, mul, inv = F.add, F.sub, F.mul, F.inv
    n = a.n
    H = [list(r) for r in a.rows]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        t_inv = inv(H[m][m - 1])
        for i in range(m + 1, n):
            u = H[i][m - 1]
            if not u:
                continue
            u = mul(u, t_inv)
            H[i] = [sub(x, mul(u, y)) for x, y in zip(H[i], H[m])]
            for row in H:
                row[m] = add(row[m], mul(u, row[i]))
    # p_k(t) = (t - h_kk) p_{k-1} - sum_i h_{k-i,k} prod(h_{j,j-1}) p_{k-i-1}, 1-based
    polys: list[Poly] = [(F.one,)]
    for k in range(1, n + 1):
        pk = poly_mul(F, (F.neg(H[k - 1][k - 1]), F.one), polys[k - 1])
        run = F.one
        for i in range(1, k):
            run = mul(run, H[k - i][k - i - 1])
            if not run:
                break
            c = mul(run, H[k - i - 1][k - 1])
            if c:
                pk = poly_sub(F, pk, tuple(mul(c, x) for x in polys[k - i - 1]))
        polys.append(poly_trim(pk))
    return polys[n]


def poly_at_matrix(f: Poly, a: Mat) -> Mat:
    """f(a) by Horner's rule."""
    F = a.F
    acc = Mat.zeros(F, a.n)
    eye = Mat.identity(F, a.n)
    for c in reversed(f):
        acc = acc @ a + eye.scale(c)
    return acc


def order_with_certified_exponent(a: Mat, Q: int, factored_Q: FactoredInteger) -> bool:
    """True iff a^Q = I and a^(Q/r) != I for every prime r dividing Q."""
    if factored_Q.value != Q:
        raise ValueError("factorization does not match Q")
    if not (a**Q).is_identity():
        return False
    return all(not (a ** (Q // r)).is_identity() for r in factored_Q.primes)


# -- the generators ----------------------------------------------------------

# y permutes the standard basis as (v1 v2 v3)(v4 v5 v6)(v7 v8 v9)(v10 v11 v12)
_Y_CYCLES = ((1, 2, 3), (4, 5, 6), (7, 8, 9), (10, 11, 12))

# x: row -> (column of the -1 entry, alpha index in column 10, alpha index in column 12)
# Column 10 carries alpha_i * alpha_11^-1. Rows 10 and 12 are special-cased.
_X_ROWS = {
    1: (1, 6, 6),
    2: (2, 5, 5),
    3: (6, 4, 7),
    4: (8, 3, 9),
    5: (5, 8, 8),
    6: (3, 7, 4),
    7: (11, 1, 10),
    8: (4, 9, 3),
    9: (9, 2, 2),
    11: (7, 10, 1),
}

# z = xy as displayed: row -> (column of -1, alpha in column 11, alpha in column 12 times alpha_11^-1)
_Z_ROWS = {
    1: (3, 6, 6),
    2: (1, 5, 5),
    3: (5, 7, 4),
    4: (7, 9, 3),
    5: (4, 8, 8),
    6: (2, 4, 7),
    7: (10, 10, 1),
    8: (6, 3, 9),
    9: (8, 2, 2),
    11: (9, 1, 10),
}


def build_y(F: GF) -> Mat:
    rows = [[0] * N for _ in range(N)]
    for cycle in _Y_CYCLES:
        for k, src in enumerate(cycle):
            dst = cycle[(k + 1) % 3]
            rows[dst - 1][src - 1] = F.one
    return Mat(F, rows)


def build_x(F: GF, alpha: AlphaVector, check: bool = True) -> Mat:
    """The involution x built from alpha_1..alpha_11.

    With ``check`` (the default) x^2 = I and det(x) = 1 are verified and a
    :class:`ConstructionError` names whichever fails.
    """
    a11 = alpha[11]
    a11_inv = F.inv(a11)
    minus_one = F.neg(F.one)
    rows = [[0] * N for _ in range(N)]
    for r, (neg_col, i10, i12) in _X_ROWS.items():
        rows[r - 1][neg_col - 1] = minus_one
        rows[r - 1][9] = F.mul(alpha[i10], a11_inv)
        rows[r - 1][11] = alpha[i12]
    rows[9][11] = a11
    rows[11][9] = a11_inv
    x = Mat(F, rows)
    if check:
        if not (x @ x).is_identity():
            raise ConstructionError("x^2 != I")
        if det(x) != F.one:
            raise ConstructionError("det(x) != 1")
    return x


def displayed_z(F: GF, alpha: AlphaVector) -> Mat:
    """z written out entry by entry, independently of the product x y."""
    a11_inv = F.inv(alpha[11])
    minus_one = F.neg(F.one)
    rows = [[0] * N for _ in range(N)]
    for r, (neg_col, i11, i12) in _Z_ROWS.items():
        rows[r - 1][neg_col - 1] = minus_one
        rows[r - 1][10] = alpha[i11]
        rows[r - 1][11] = F.mul(alpha[i12], a11_inv)
    rows[9][10] = alpha[11]
    rows[11][11] = a11_inv
    return Mat(F, rows)


def build_z(x: Mat, y: Mat, alpha: AlphaVector | None = None) -> Mat:
    """z = x y; when ``alpha`` is given the product is checked against :func:`displayed_z`."""
    z = x @ y
    if alpha is not None and z != displayed_z(x.F, alpha):
        raise ConstructionError("x y differs from the displayed z")
    return z


@dataclass(frozen=True)
class GeneratorTriple:
    x: Mat
    y: Mat
    z: Mat
    alpha: AlphaVector


def build_triple(F: GF, alpha: AlphaVector, check: bool = True) -> GeneratorTriple:
    x = build_x(F, alpha, check=check)
    y = build_y(F)
    return GeneratorTriple(x, y, build_z(x, y, alpha), alpha)
