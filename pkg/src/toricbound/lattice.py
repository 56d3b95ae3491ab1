"""Exact integer linear algebra on lattice vectors and integer matrices.

Vectors are plain tuples of Python ints; matrices are :class:`IntegerMatrix`
values.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InputError

Vector = tuple[int, ...]


def vec(xs: Iterable[int]) -> Vector:
    return tuple(int(x) for x in xs)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    """Integer pairing of two vectors of equal rank."""
    if len(a) != len(b):
        raise InputError(f"rank mismatch: {len(a)} != {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def add(a: Sequence[int], b: Sequence[int]) -> Vector:
    if len(a) != len(b):
        raise InputError(f"rank mismatch: {len(a)} != {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    if len(a) != len(b):
        raise InputError(f"rank mismatch: {len(a)} != {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> Vector:
    return tuple(k * x for x in a)


def zero(rank: int) -> Vector:
    return (0,) * rank


def content(v: Sequence[int]) -> int:
    """gcd of the coordinates (0 for the zero vector)."""
    return reduce(gcd, v, 0)


def primitive(v: Sequence[int]) -> Vector:
    """Divide ``v`` by the gcd of its coordinates, keeping its direction."""
    g = content(v)
    if g == 0:
        raise InputError("the zero vector has no primitive generator")
    return tuple(x // g for x in v)


def primitive_rational(v: Sequence[Fraction]) -> Vector:
    """Primitive integer vector on the ray spanned by a rational vector."""
    den = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    return primitive([int(Fraction(x) * den) for x in v])


def embed(v: Sequence[int], offset: int, rank: int) -> Vector:
    """Place ``v`` in coordinates ``offset:offset+len(v)`` of a rank ``rank`` vector."""
    out = [0] * rank
    out[offset:offset + len(v)] = v
    return tuple(out)


@dataclass(frozen=True)
class IntegerMatrix:
    """Row-major integer matrix.  Empty shapes (0 x n, m x 0) are allowed."""

    rows: tuple[Vector, ...]
    nrows: int
    ncols: int

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise InputError("matrix is not rectangular")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: int | None = None) -> "IntegerMatrix":
        rs = tuple(vec(r) for r in rows)
        if ncols is None:
            if not rs:
                raise InputError("ncols required for a matrix with no rows")
            ncols = len(rs[0])
        return cls(rs, len(rs), ncols)

    @classmethod
    def from_columns(cls, cols: Iterable[Iterable[int]], nrows: int | None = None) -> "IntegerMatrix":
        cs = [vec(c) for c in cols]
        if nrows is None:
            if not cs:
                raise InputError("nrows required for a matrix with no columns")
            nrows = len(cs[0])
        return cls.from_rows(zip(*cs), len(cs)) if cs else cls.zeros(nrows, 0)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntegerMatrix":
        return cls(tuple((0,) * n for _ in range(m)), m, n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> tuple[Vector, ...]:
        return tuple(self.column(j) for j in range(self.ncols))

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(self.columns(), self.nrows)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return IntegerMatrix.from_rows(
            (tuple(dot(r, c) for c in cols) for r in self.rows), other.ncols
        )

    def apply(self, v: Sequence[int]) -> Vector:
        """Matrix-vector product ``self @ v``."""
        return tuple(dot(r, v) for r in self.rows)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise InputError("determinant of a non-square matrix")
        return determinant(self.rows)

    def is_unimodular(self) -> bool:
        return self.nrows == self.ncols and abs(self.det()) == 1

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def row_echelon(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Reduced row echelon form over Q; returns the nonzero rows."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return []
    ncols = len(a[0])
    out_row = 0
    for col in range(ncols):
        piv = next((i for i in range(out_row, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[out_row], a[piv] = a[piv], a[out_row]
        p = a[out_row][col]
        a[out_row] = [x / p for x in a[out_row]]
        for i in range(len(a)):
            if i != out_row and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[out_row])]
        out_row += 1
        if out_row == len(a):
            break
    return a[:out_row]


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(row_echelon(rows)) if rows else 0


def independent_subset(rows: Sequence[Sequence[int]]) -> list[int]:
    """Indices of a greedily chosen maximal linearly independent subset, in order."""
    chosen: list[int] = []
    basis: list[Sequence[int]] = []
    for i, r in enumerate(rows):
        if rank(basis + [r]) > len(basis):
            basis.append(r)
            chosen.append(i)
    return chosen


def solve_rational(rows: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Some rational x with A x = b (free variables set to 0), or None."""
    if not rows:
        return None
    n = len(rows[0])
    aug = row_echelon([list(r) + [bi] for r, bi in zip(rows, b)])
    x = [Fraction(0)] * n
    for r in aug:
        lead = next(j for j, v in enumerate(r) if v != 0)
        if lead == n:
            return None
        x[lead] = r[n]
    return x


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``S`` diagonal and each diagonal entry dividing the next."""

    U: IntegerMatrix
    S: IntegerMatrix
    V: IntegerMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)


def _smallest_pivot(S: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, len(S)):
        for j in range(t, len(S[i])):
            v = S[i][j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(A: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form with transforms.

    Pivoting is deterministic: at every stage the nonzero entry of smallest
    absolute value in the trailing submatrix is moved to the diagonal (ties
    broken by lowest row, then lowest column).
    """
    m, n = A.shape
    S = [list(r) for r in A.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        S[i], S[k] = S[k], S[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in S:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    def add_row(dst, src, q):  # row dst += q * row src
        S[dst] = [x + q * y for x, y in zip(S[dst], S[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for r in S:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            piv = _smallest_pivot(S, t)
            if piv is None:
                break
            i, j = piv
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = S[t][t]
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
            if any(S[i][t] for i in range(t + 1, m)) or any(S[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        if _smallest_pivot(S, t) is None:
            break

    diag = tuple(S[k][k] for k in range(min(m, n)))
    return SmithDecomposition(
        IntegerMatrix.from_rows(U, m),
        IntegerMatrix.from_rows(S, n),
        IntegerMatrix.from_rows(V, n),
        diag,
    )


def cokernel_invariants(A: IntegerMatrix) -> tuple[int, list[int]]:
    """Invariant factor decomposition of ``Z^nrows / A Z^ncols``.

    Returns ``(free_rank, torsion)`` where torsion lists the invariant factors
    greater than one in divisibility order.
    """
    snf = smith_normal_form(A)
    free_rank = A.nrows - snf.rank
    torsion = [d for d in snf.invariant_factors if d > 1]
    return free_rank, torsion


def solve_integer(A: IntegerMatrix, b: Sequence[int]) -> Vector | None:
    """An integer solution of ``A x = b``, or None when b is not in the image."""
    if len(b) != A.nrows:
        raise InputError(f"rank mismatch: {len(b)} != {A.nrows}")
    snf = smith_normal_form(A)
    c = snf.U.apply(b)
    y = [0] * A.ncols
    for i, ci in enumerate(c):
        d = snf.invariant_factors[i] if i < len(snf.invariant_factors) else 0
        if d == 0:
            if ci != 0:
                return None
        else:
            if ci % d:
                return None
            y[i] = ci // d
    return snf.V.apply(y)


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[Vector]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive and entries above a pivot are reduced into
    ``[0, pivot)``.  Zero rows are dropped, so the result is the canonical
    basis of the row lattice.
    """
    a = [list(r) for r in rows]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][col] != 0]
            if not nz:
                break
            k = min(nz, key=lambda i: (abs(a[i][col]), i))
            a[r], a[k] = a[k], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // a[r][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][col] != 0:
            if a[r][col] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][col] // a[r][col]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [tuple(row) for row in a[:r]]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Canonical lattice basis of ``{x in Z^ncols : A x = 0}`` (a saturated lattice)."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    A = IntegerMatrix.from_rows(rows, ncols)
    snf = smith_normal_form(A)
    basis = [snf.V.column(j) for j in range(snf.rank, ncols)]
    return hermite_normal_form(basis)
