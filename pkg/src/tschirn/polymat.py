"""Matrices over Q[x] and over the Laurent ring Q[x, 1/x].

Convention used throughout the package: unimodular transformations act by
*right* multiplication (column operations) in :func:`hermite_form`, so an
input ``M`` is reduced as ``M @ U = H`` with ``H`` lower triangular.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .arith import LaurentPoly, UniPoly, format_rat, parse_rat

__all__ = [
    "PolyMatrix",
    "LaurentMatrix",
    "HermiteResult",
    "determinant",
    "hermite_form",
    "inverse_unimodular",
    "adjugate",
    "rational_nullspace",
    "rational_rank",
]


class _Matrix:
    """Immutable rectangular matrix; subclasses fix the entry ring."""

    _zero: Callable
    _one: Callable
    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(self._coerce(e) for e in r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrices must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows

    @classmethod
    def _coerce(cls, e):
        raise NotImplementedError

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    @classmethod
    def identity(cls, n: int):
        return cls([[cls._one() if i == j else cls._zero() for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence):
        n = len(entries)
        return cls([[entries[i] if i == j else cls._zero() for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]):
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    def transpose(self):
        return type(self)([self.column(j) for j in range(self.ncols)])

    def __matmul__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        zero = self._zero()
        cols = other.columns()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return type(self)(out)

    def __add__(self, other):
        return type(self)([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c):
        return type(self)([[a * c for a in r] for r in self.rows])

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def permute_rows(self, perm: Sequence[int]):
        return type(self)([self.rows[p] for p in perm])

    def permute_columns(self, perm: Sequence[int]):
        return type(self)([[r[p] for p in perm] for r in self.rows])

    def to_json(self) -> list:
        return [[e.to_json() for e in r] for r in self.rows]

    def __repr__(self):
        body = "\n ".join("[" + ", ".join(repr(e) for e in r) + "]" for r in self.rows)
        return f"{type(self).__name__}(\n {body})"


class PolyMatrix(_Matrix):
    """Matrix with entries in Q[x]."""

    __slots__ = ()

    @staticmethod
    def _zero():
        return UniPoly(())

    @staticmethod
    def _one():
        return UniPoly((1,))

    @classmethod
    def _coerce(cls, e):
        if isinstance(e, UniPoly):
            return e
        if isinstance(e, (int, Fraction, str)):
            return UniPoly((parse_rat(e),))
        raise TypeError(f"cannot use {e!r} as a polynomial entry")

    def max_degree(self) -> int | None:
        degs = [e.degree for r in self.rows for e in r if e]
        return max(degs) if degs else None

    def to_laurent(self) -> "LaurentMatrix":
        return LaurentMatrix([[LaurentPoly.from_poly(e) for e in r] for r in self.rows])

    def evaluate(self, x0) -> list[list[Fraction]]:
        x0 = parse_rat(x0)
        return [[e(x0) for e in r] for r in self.rows]

    @classmethod
    def from_json(cls, data):
        return cls([[UniPoly.from_json(e) for e in r] for r in data])


class LaurentMatrix(_Matrix):
    """Matrix with entries in Q[x, 1/x]."""

    __slots__ = ()

    @staticmethod
    def _zero():
        return LaurentPoly()

    @staticmethod
    def _one():
        return LaurentPoly({0: 1})

    @classmethod
    def _coerce(cls, e):
        if isinstance(e, LaurentPoly):
            return e
        if isinstance(e, UniPoly):
            return LaurentPoly.from_poly(e)
        if isinstance(e, (int, Fraction, str)):
            return LaurentPoly({0: parse_rat(e)})
        raise TypeError(f"cannot use {e!r} as a Laurent entry")

    def exponent_range(self) -> tuple[int, int] | None:
        lo = [e.min_exp for r in self.rows for e in r if e]
        hi = [e.max_exp for r in self.rows for e in r if e]
        return (min(lo), max(hi)) if lo else None

    def is_poly_in_x(self) -> bool:
        return all(e.in_x() for r in self.rows for e in r)

    def is_poly_in_inv_x(self) -> bool:
        return all(e.in_inv_x() for r in self.rows for e in r)

    def substitute_inverse(self) -> "LaurentMatrix":
        """Entries p(x) -> p(1/x)."""
        return LaurentMatrix([[LaurentPoly({-k: c for k, c in e.terms.items()}) for e in r] for r in self.rows])

    @classmethod
    def from_json(cls, data):
        return cls([[LaurentPoly.from_json(e) for e in r] for r in data])


# ---------------------------------------------------------------------------
# determinants and adjugates
# ---------------------------------------------------------------------------


def _bareiss_poly(rows: list[list[UniPoly]]) -> UniPoly:
    n = len(rows)
    a = [list(r) for r in rows]
    sign = 1
    prev = UniPoly((1,))
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return UniPoly(())
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = a[i][j] * akk - aik * a[k][j]
                a[i][j] = num.exact_div(prev) if prev.degree else num * (1 / prev.lc)
            a[i][k] = UniPoly(())
        prev = akk
    return a[n - 1][n - 1] * sign


def determinant(M: PolyMatrix | LaurentMatrix):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    if isinstance(M, PolyMatrix):
        return _bareiss_poly([list(r) for r in M.rows])
    if isinstance(M, LaurentMatrix):
        shifts = []
        rows = []
        for r in M.rows:
            lows = [e.min_exp for e in r if e]
            s = min(lows) if lows else 0
            shifts.append(s)
            rows.append([e.shift(-s).to_poly() for e in r])
        d = _bareiss_poly(rows)
        return LaurentPoly.from_poly(d, sum(shifts))
    raise TypeError("unsupported matrix type")


def adjugate(M: PolyMatrix) -> PolyMatrix:
    """Classical adjugate: M @ adj(M) = det(M) * I."""
    n = M.nrows
    if not M.is_square():
        raise ValueError("adjugate of a non-square matrix")
    if n == 1:
        return PolyMatrix([[1]])
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[M.rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            d = _bareiss_poly(minor)
            out[j][i] = d if (i + j) % 2 == 0 else -d
    return PolyMatrix(out)


# ---------------------------------------------------------------------------
# Hermite form (column style)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HermiteResult:
    """``M @ U == H`` with H lower triangular, monic, reduced, U unimodular."""

    H: PolyMatrix
    U: PolyMatrix | None

    @property
    def basis(self) -> PolyMatrix:
        """The leading square block of H (a basis of the column module)."""
        m = self.H.nrows
        return PolyMatrix([r[:m] for r in self.H.rows])


def hermite_form(M: PolyMatrix, with_transform: bool = True) -> HermiteResult:
    """Column Hermite form of a full-row-rank polynomial matrix.

    Pivot choice in each row: the nonzero entry of lowest degree, ties to the
    lowest column index.  Entries left of each pivot are reduced to degree
    below the pivot degree.
    """
    m, n = M.shape
    if n < m:
        raise ValueError("rank-deficient input: fewer columns than rows")
    H = [list(r) for r in M.rows]
    U = [[UniPoly((1,)) if i == j else UniPoly(()) for j in range(n)] for i in range(n)] if with_transform else None

    def swap(a, b):
        for r in H:
            r[a], r[b] = r[b], r[a]
        if U is not None:
            for r in U:
                r[a], r[b] = r[b], r[a]

    def axpy(dst, q, src):
        # column dst -= q * column src
        for r in H:
            if r[src]:
                r[dst] = r[dst] - q * r[src]
        if U is not None:
            for r in U:
                if r[src]:
                    r[dst] = r[dst] - q * r[src]

    def scale(col, c):
        for r in H:
            r[col] = r[col] * c
        if U is not None:
            for r in U:
                r[col] = r[col] * c

    for i in range(m):
        while True:
            nz = [j for j in range(i, n) if H[i][j]]
            if not nz:
                raise ValueError("rank-deficient input")
            p = min(nz, key=lambda j: (H[i][j].degree, j))
            if p != i:
                swap(i, p)
            done = True
            piv = H[i][i]
            for j in range(i + 1, n):
                if H[i][j]:
                    q = H[i][j] // piv
                    axpy(j, q, i)
                    if H[i][j]:
                        done = False
            if done:
                break
        lc = H[i][i].lc
        if lc != 1:
            scale(i, 1 / lc)
        piv = H[i][i]
        for j in range(i):
            if H[i][j] and H[i][j].degree >= piv.degree:
                axpy(j, H[i][j] // piv, i)
    return HermiteResult(PolyMatrix(H), PolyMatrix(U) if U is not None else None)


def inverse_unimodular(M: PolyMatrix) -> PolyMatrix:
    """Polynomial inverse of a matrix with nonzero constant determinant."""
    d = determinant(M)
    if d.is_zero() or d.degree != 0:
        raise ValueError("matrix is not unimodular over Q[x]")
    return adjugate(M).scale(1 / d.lc)


# ---------------------------------------------------------------------------
# linear algebra over Q
# ---------------------------------------------------------------------------


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                ai, ar = a[i], a[r]
                a[i] = [vi - f * vr for vi, vr in zip(ai, ar)]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rational_nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : A v = 0} for a rational matrix A (given by rows)."""
    rows = [[parse_rat(v) for v in r] for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        basis.append(v)
    return basis


def rational_rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    rows = [[parse_rat(v) for v in r] for r in rows]
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(_rref(rows, ncols)[1])


def format_matrix_rat(rows: Sequence[Sequence[Fraction]]) -> list[list[str]]:
    return [[format_rat(v) for v in r] for r in rows]
