"""Birkhoff factorization of Laurent polynomial matrices.

A vector bundle of rank m on P^1 is glued from free modules over Q[x] (chart
at zero) and Q[1/x] (chart at infinity) by an invertible Laurent matrix T.
Orientation: T expresses the chart-at-infinity basis in terms of the
chart-at-zero basis, and a summand O(d) corresponds to the entry x^d.  So
``diag(x)`` is O(1), with two global sections.

Factorization is ``T = P @ diag(x^d_1, ..., x^d_m) @ Q`` with P unimodular
over Q[x] and Q unimodular over Q[1/x].  It is found by leading-row
reduction: left row operations with polynomial multipliers lower the row
degrees until the matrix of leading row coefficients is invertible; the sum
of row degrees strictly drops at every step and is bounded below by the
exponent of det(T).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import LaurentPoly
from .polymat import LaurentMatrix, PolyMatrix, adjugate, determinant, rational_nullspace, rational_rank

__all__ = [
    "TransitionMatrix",
    "SplittingType",
    "BirkhoffFactorization",
    "BirkhoffError",
    "factorize",
    "splitting_type",
    "cohomology_dims",
    "h0_oracle",
    "laurent_inverse",
]


class BirkhoffError(ArithmeticError):
    """The input is not a bundle gluing, or the reduction failed to finish."""


@dataclass(frozen=True)
class SplittingType:
    """Multiset of line-bundle degrees, stored sorted descending."""

    degrees: tuple[int, ...]

    def __init__(self, degrees: Iterable[int]):
        object.__setattr__(self, "degrees", tuple(sorted((int(d) for d in degrees), reverse=True)))

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self):
        return len(self.degrees)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def to_json(self) -> list[int]:
        return list(self.degrees)

    def __repr__(self):
        return f"SplittingType{self.degrees}"


class TransitionMatrix:
    """Square Laurent matrix whose determinant is a unit c * x^k."""

    __slots__ = ("T", "det")

    def __init__(self, T: LaurentMatrix):
        if not isinstance(T, LaurentMatrix):
            T = LaurentMatrix(T.rows if hasattr(T, "rows") else T)
        if not T.is_square():
            raise BirkhoffError("transition matrix must be square")
        det = determinant(T)
        if not det.is_monomial():
            raise BirkhoffError(f"determinant {det} is not a unit of the Laurent ring")
        self.T = T
        self.det = det

    @property
    def size(self) -> int:
        return self.T.nrows

    @property
    def det_exponent(self) -> int:
        return self.det.max_exp

    def __repr__(self):
        return f"TransitionMatrix({self.T!r})"


@dataclass(frozen=True)
class BirkhoffFactorization:
    """``P @ diag(x^d) @ Q == T``; P over Q[x], Q over Q[y] with y = 1/x."""

    P: PolyMatrix
    exponents: tuple[int, ...]
    Q: PolyMatrix
    steps: int = field(default=0, compare=False)

    @property
    def splitting(self) -> SplittingType:
        return SplittingType(self.exponents)

    def P_laurent(self) -> LaurentMatrix:
        return self.P.to_laurent()

    def Q_laurent(self) -> LaurentMatrix:
        return self.Q.to_laurent().substitute_inverse()

    def middle(self) -> LaurentMatrix:
        return LaurentMatrix.diagonal([LaurentPoly.monomial(d) for d in self.exponents])

    def reconstruct(self) -> LaurentMatrix:
        return self.P_laurent() @ self.middle() @ self.Q_laurent()

    def to_json(self) -> dict:
        return {"P": self.P.to_json(), "D": list(self.exponents), "Q": self.Q.to_json()}


def _as_transition(T) -> TransitionMatrix:
    return T if isinstance(T, TransitionMatrix) else TransitionMatrix(T)


def factorize(T, max_steps: int | None = None) -> BirkhoffFactorization:
    """Birkhoff factorization with exponents sorted descending."""
    tm = _as_transition(T)
    m = tm.size
    cap = 64 * m * m if max_steps is None else max_steps
    R = [list(r) for r in tm.T.rows]
    one, zero = LaurentPoly({0: 1}), LaurentPoly()
    P = [[one if i == j else zero for j in range(m)] for i in range(m)]
    steps = 0
    trace = []
    while True:
        degs = [max(e.max_exp for e in row if e) for row in R]
        lead = [[R[i][j].coeff(degs[i]) for j in range(m)] for i in range(m)]
        # left kernel of the leading coefficient matrix
        kernel = rational_nullspace([[lead[i][j] for i in range(m)] for j in range(m)], m)
        if not kernel:
            break
        steps += 1
        if steps > cap:
            raise BirkhoffError(f"row reduction exceeded {cap} steps; trace of row-degree sums: {trace[-8:]}")
        trace.append(sum(degs))
        alpha = kernel[0]
        support = [j for j in range(m) if alpha[j]]
        top = max(support, key=lambda j: (degs[j], -j))
        new_row = [zero] * m
        for j in support:
            mult = LaurentPoly({degs[top] - degs[j]: alpha[j]})
            new_row = [a + mult * b for a, b in zip(new_row, R[j])]
        R[top] = new_row
        # P <- P @ E^{-1}
        a_top = alpha[top]
        col_top = [P[r][top] for r in range(m)]
        for j in support:
            if j == top:
                continue
            mult = LaurentPoly({degs[top] - degs[j]: -alpha[j] / a_top})
            for r in range(m):
                P[r][j] = P[r][j] + mult * col_top[r]
        for r in range(m):
            P[r][top] = col_top[r] * LaurentPoly({0: 1 / a_top})
    order = sorted(range(m), key=lambda i: (-degs[i], i))
    exps = tuple(degs[i] for i in order)
    Qrows = [[e.shift(-degs[i]) for e in R[i]] for i in order]
    Pcols = [[P[r][i] for i in order] for r in range(m)]
    Pm = PolyMatrix([[e.to_poly() for e in r] for r in Pcols])
    Qm = PolyMatrix([[e.to_inv_poly("y") for e in r] for r in Qrows])
    fac = BirkhoffFactorization(Pm, exps, Qm, steps)
    if fac.reconstruct() != tm.T:
        raise BirkhoffError("internal error: refactorization identity failed")
    if sum(exps) != tm.det_exponent:
        raise BirkhoffError("internal error: exponent sum differs from det exponent")
    return fac


def splitting_type(T) -> SplittingType:
    return factorize(T).splitting


def cohomology_dims(t: SplittingType | Sequence[int], k: int = 0) -> tuple[int, int]:
    """(h0, h1) of the split bundle twisted by O(k)."""
    degs = list(t)
    h0 = sum(max(0, d + k + 1) for d in degs)
    h1 = sum(max(0, -d - k - 1) for d in degs)
    return h0, h1


def laurent_inverse(T) -> LaurentMatrix:
    """T^{-1} through the adjugate; independent of any factorization."""
    tm = _as_transition(T)
    lo, _ = tm.T.exponent_range() or (0, 0)
    A = PolyMatrix([[e.shift(-lo).to_poly() for e in r] for r in tm.T.rows])
    adj = adjugate(A).to_laurent()
    det_a = determinant(A)
    inv_det = LaurentPoly.from_poly(det_a).inv_monomial()
    return LaurentMatrix([[e * inv_det for e in r] for r in adj.rows]).scale(LaurentPoly.monomial(-lo))


def _max_abs_exponent(M: LaurentMatrix) -> int:
    rng = M.exponent_range()
    return max(abs(rng[0]), abs(rng[1])) if rng else 0


def h0_oracle(T, k: int, window: int | None = None) -> int:
    """dim H^0(V(k)) by bounded-degree linear algebra.

    Counts polynomial vectors v over Q[x] with x^(-k) T^(-1) v polynomial in
    1/x.  Any such v equals x^k T u with u over Q[1/x], so its degree is at
    most k + (max exponent of T); this bounds the unknowns.
    """
    tm = _as_transition(T)
    Tinv = laurent_inverse(tm)
    if window is None:
        window = _max_abs_exponent(tm.T) + _max_abs_exponent(Tinv) + 3
    if abs(k) > window:
        raise ValueError(f"twist {k} outside the oracle window |k| <= {window}")
    m = tm.size
    top = tm.T.exponent_range()[1]
    A = k + top
    if A < 0:
        return 0
    lo_inv, hi_inv = Tinv.exponent_range()
    nvars = m * (A + 1)

    def col(j, a):
        return j * (A + 1) + a

    rows = []
    for p in range(1, hi_inv + A - k + 1):
        for r in range(m):
            row = [Fraction(0)] * nvars
            nonzero = False
            for j in range(m):
                entry = Tinv.rows[r][j]
                if not entry:
                    continue
                for a in range(A + 1):
                    c = entry.coeff(p + k - a)
                    if c:
                        row[col(j, a)] = c
                        nonzero = True
            if nonzero:
                rows.append(row)
    return nvars - rational_rank(rows, nvars)
