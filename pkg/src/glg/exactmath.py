"""Exact scalars, canonical subspaces and integer normal forms.

Scalars are plain Python values: ``fractions.Fraction`` over Q and ``int``
residues in ``range(p)`` over GF(p).  A :class:`Field` knows how to coerce
and combine them.  Vectors are tuples of scalars, matrices are sequences of
row vectors.

Integer matrices are lists of lists of Python ints (arbitrary precision).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class DimensionMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """Q (characteristic 0) or GF(p) for a prime p < 2**31."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not (is_prime(p) and p < 2**31):
            raise ValueError(f"characteristic must be 0 or a prime < 2**31, got {p}")

    @property
    def kind(self) -> str:
        return "Rationals" if self.characteristic == 0 else "PrimeField"

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, x):
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        p = self.characteristic
        if isinstance(x, str):
            x = Fraction(x)
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({p})")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def add(self, a, b):
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else (a * b) % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        """All elements of a prime field, in increasing order."""
        if self.characteristic == 0:
            raise ValueError("Q is infinite")
        return range(self.characteristic)

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# -- vectors ---------------------------------------------------------------

def zero_vector(field: Field, n: int) -> tuple:
    return (field.zero,) * n


def unit_vector(field: Field, n: int, i: int) -> tuple:
    return tuple(field.one if k == i else field.zero for k in range(n))


def vec_add(field: Field, u, v) -> tuple:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} and {len(v)}")
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_scale(field: Field, c, v) -> tuple:
    return tuple(field.mul(c, a) for a in v)


def vec_sub(field: Field, u, v) -> tuple:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} and {len(v)}")
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def is_zero(v) -> bool:
    return not any(v)


# -- row reduction ---------------------------------------------------------

def _rref_rows(rows: Iterable[Sequence], field: Field, ncols: int):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    m = [[field(x) for x in r] for r in rows]
    for row in m:
        if len(row) != ncols:
            raise DimensionMismatch(f"row of length {len(row)} in a matrix with {ncols} columns")
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


@dataclass(frozen=True)
class Subspace:
    """Row space in canonical reduced row echelon form.

    Two subspaces are equal iff their ``basis`` tuples are identical, so
    ``==`` and ``hash`` are structural.
    """

    field: Field
    ambient_dim: int
    basis: tuple

    @property
    def rank(self) -> int:
        return len(self.basis)

    dim = rank

    @property
    def pivots(self) -> tuple:
        return tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def __contains__(self, v):
        return subspace_contains(self, v)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, tuple(unit_vector(field, n, i) for i in range(n)))

    @classmethod
    def span(cls, field: Field, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        return rref([tuple(field(x) for x in v) for v in vectors], field, ncols=n)


def rref(matrix: Sequence[Sequence], field: Field, ncols: int | None = None) -> Subspace:
    """Canonical basis of the row space of ``matrix``."""
    matrix = list(matrix)
    if ncols is None:
        if not matrix:
            raise ValueError("cannot infer the width of an empty matrix")
        ncols = len(matrix[0])
    for row in matrix:
        if len(row) != ncols:
            raise DimensionMismatch(f"row of length {len(row)} in a {ncols}-column matrix")
    rows, _ = _rref_rows(matrix, field, ncols)
    return Subspace(field, ncols, tuple(rows))


def _check_same(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim}")
    if a.field != b.field:
        raise ValueError(f"fields {a.field} and {b.field} differ")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    return rref(a.basis + b.basis, a.field, a.ambient_dim)


def subspace_contains(a: Subspace, v: Sequence) -> bool:
    if len(v) != a.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {a.ambient_dim}")
    f = a.field
    v = list(v)
    for row, p in zip(a.basis, a.pivots):
        c = v[p]
        if c:
            v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
    return not any(v)


def kernel(matrix: Sequence[Sequence], field: Field, ncols: int) -> Subspace:
    """Right kernel {x : matrix . x = 0} as a subspace of field^ncols."""
    rows, pivots = _rref_rows(matrix, field, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [field.zero] * ncols
        x[fc] = field.one
        for row, pc in zip(rows, pivots):
            x[pc] = field.neg(row[fc])
        basis.append(x)
    return rref(basis, field, ncols)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b from the left kernel of the stacked bases."""
    _check_same(a, b)
    f, n = a.field, a.ambient_dim
    stacked = list(a.basis) + list(b.basis)
    if not a.basis or not b.basis:
        return Subspace.zero(f, n)
    # columns of the transpose are the stacked rows
    transpose = [[row[j] for row in stacked] for j in range(n)]
    coeffs = kernel(transpose, f, len(stacked))
    vectors = []
    for c in coeffs.basis:
        v = [f.zero] * n
        for ci, row in zip(c[: a.rank], a.basis):
            if ci:
                v = [f.add(x, f.mul(ci, y)) for x, y in zip(v, row)]
        vectors.append(v)
    return rref(vectors, f, n)


# -- integer lattices ------------------------------------------------------

def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _ncols(m, ncols):
    if ncols is not None:
        return ncols
    if not m:
        raise ValueError("cannot infer the width of an empty matrix")
    return len(m[0])


def hermite_decomposition(m: Sequence[Sequence[int]], ncols: int | None = None):
    """Row Hermite normal form H with a unimodular T such that the nonzero
    rows of T.m are H (the remaining rows of T.m are zero).

    Pivots are positive and entries above a pivot lie in [0, pivot).
    """
    n = _ncols(m, ncols)
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    t = [[int(i == j) for j in range(rows)] for i in range(rows)]
    r = 0
    for c in range(n):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if a[i][c] == 0:
                continue
            if a[r][c] == 0:
                a[r], a[i] = a[i], a[r]
                t[r], t[i] = t[i], t[r]
                continue
            if a[i][c] % a[r][c] == 0:
                q = a[i][c] // a[r][c]
                a[i] = [u - q * v for u, v in zip(a[i], a[r])]
                t[i] = [u - q * v for u, v in zip(t[i], t[r])]
                continue
            g, x, y = _xgcd(a[r][c], a[i][c])
            p, q = a[r][c] // g, a[i][c] // g
            a[r], a[i] = ([x * u + y * v for u, v in zip(a[r], a[i])],
                          [-q * u + p * v for u, v in zip(a[r], a[i])])
            t[r], t[i] = ([x * u + y * v for u, v in zip(t[r], t[i])],
                          [-q * u + p * v for u, v in zip(t[r], t[i])])
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-u for u in a[r]]
            t[r] = [-u for u in t[r]]
        piv = a[r][c]
        for i in range(r):
            q = a[i][c] // piv
            if q:
                a[i] = [u - q * v for u, v in zip(a[i], a[r])]
                t[i] = [u - q * v for u, v in zip(t[i], t[r])]
        r += 1
    return [row for row in a[:r]], t


def hermite_basis(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    return hermite_decomposition(m, ncols)[0]


def lattice_solve(m: Sequence[Sequence[int]], v: Sequence[int]):
    """Integer coefficients c with c.m == v, or None if v is not in the lattice."""
    n = len(v)
    if m and len(m[0]) != n:
        raise DimensionMismatch(f"vector of length {n} against {len(m[0])} columns")
    h, t = hermite_decomposition(m, n)
    rest = list(map(int, v))
    coeffs = [0] * len(h)
    for k, row in enumerate(h):
        c = next(i for i, x in enumerate(row) if x)
        if any(rest[:c]):
            return None
        if rest[c] % row[c]:
            return None
        q = rest[c] // row[c]
        coeffs[k] = q
        rest = [x - q * y for x, y in zip(rest, row)]
    if any(rest):
        return None
    # c_h . H = v and H = first rows of T.m
    return [sum(coeffs[k] * t[k][j] for k in range(len(h))) for j in range(len(m))]


def lattice_contains(m: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return lattice_solve(m, v) is not None


@dataclass(frozen=True)
class SmithDecomposition:
    """``U . m . V == diagonal`` with U, V unimodular."""

    invariant_factors: tuple
    U: tuple
    V: tuple
    diagonal: tuple

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def free_rank(self) -> int:
        """Free rank of the cokernel Z^cols / rowspace(m)."""
        ncols = len(self.V)
        return ncols - self.rank

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.invariant_factors if d != 1)


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_decomposition(m: Sequence[Sequence[int]], ncols: int | None = None) -> SmithDecomposition:
    n = _ncols(m, ncols)
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    u = _identity(rows)
    v = _identity(n)

    def row_combine(i, j, x, y, z, w):
        # (row_i, row_j) <- (x row_i + y row_j, z row_i + w row_j) in a and u
        for mat in (a, u):
            mat[i], mat[j] = ([x * p + y * q for p, q in zip(mat[i], mat[j])],
                              [z * p + w * q for p, q in zip(mat[i], mat[j])])

    def col_combine(i, j, x, y, z, w):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = x * row[i] + y * row[j], z * row[i] + w * row[j]

    def swap_rows(i, j):
        for mat in (a, u):
            mat[i], mat[j] = mat[j], mat[i]

    def swap_cols(i, j):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    k = 0
    while k < min(rows, n):
        nonzero = [(abs(a[i][j]), i, j) for i in range(k, rows) for j in range(k, n) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(k, i)
        swap_cols(k, j)
        while True:
            changed = False
            for i in range(k + 1, rows):
                if a[i][k] and a[i][k] % a[k][k] == 0:
                    row_combine(k, i, 1, 0, -(a[i][k] // a[k][k]), 1)
                    changed = True
                elif a[i][k]:
                    g, x, y = _xgcd(a[k][k], a[i][k])
                    p, q = a[k][k] // g, a[i][k] // g
                    row_combine(k, i, x, y, -q, p)
                    changed = True
            for j in range(k + 1, n):
                if a[k][j] and a[k][j] % a[k][k] == 0:
                    col_combine(k, j, 1, 0, -(a[k][j] // a[k][k]), 1)
                    changed = True
                elif a[k][j]:
                    g, x, y = _xgcd(a[k][k], a[k][j])
                    p, q = a[k][k] // g, a[k][j] // g
                    col_combine(k, j, x, y, -q, p)
                    changed = True
            if not changed:
                break
        d = a[k][k]
        # divisibility: fold a non-multiple entry into the pivot row
        bad = next(((i, j) for i in range(k + 1, rows) for j in range(k + 1, n) if a[i][j] % d), None)
        if bad is not None:
            row_combine(k, bad[0], 1, 1, 0, 1)
            continue
        if d < 0:
            for mat in (a, u):
                mat[k] = [-x for x in mat[k]]
        k += 1
    factors = tuple(a[i][i] for i in range(min(rows, n)) if a[i][i])
    return SmithDecomposition(
        invariant_factors=factors,
        U=tuple(map(tuple, u)),
        V=tuple(map(tuple, v)),
        diagonal=tuple(map(tuple, a)),
    )


def int_matmul(a, b):
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(ncols)] for i in range(len(a))]


def int_det(m) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]
