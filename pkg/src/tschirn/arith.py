"""Exact arithmetic over Q: univariate, Laurent and bivariate polynomials.

Rationals are :class:`fractions.Fraction`.  Univariate polynomials are dense
(ascending coefficient tuples), Laurent and bivariate polynomials are sparse
maps.  Every value is immutable.

The degree of the zero polynomial is ``None``.  It never takes part in
integer arithmetic, so forgetting the zero case raises ``TypeError`` instead
of producing an off-by-one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rat = Fraction

__all__ = [
    "Rat",
    "parse_rat",
    "format_rat",
    "UniPoly",
    "LaurentPoly",
    "BiPoly",
    "gcd",
    "xgcd",
    "lcm",
    "squarefree_part",
    "resultant_fiber",
    "QuotientCtx",
    "SplitEvent",
]


def parse_rat(value) -> Fraction:
    """Parse ``"p/q"`` strings, ints and Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rat(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# integer polynomial kernels (lists of ints, ascending)
# ---------------------------------------------------------------------------


def _istrip(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _icontent(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _iprimitive(p: list[int]) -> list[int]:
    """Primitive part with positive leading coefficient."""
    if not p:
        return []
    c = _icontent(p)
    if p[-1] < 0:
        c = -c
    return [a // c for a in p]


def _ieval(p: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _iexact_quotient(f: list[int], h: list[int]) -> list[int] | None:
    """Return f / h if h divides f in Z[x], else None."""
    if not h:
        raise ZeroDivisionError
    df, dh = len(f) - 1, len(h) - 1
    if df < dh:
        return [] if not f else None
    r = list(f)
    lc = h[-1]
    q = [0] * (df - dh + 1)
    for k in range(df - dh, -1, -1):
        c, rem = divmod(r[k + dh], lc)
        if rem:
            return None
        q[k] = c
        if c:
            for i in range(dh + 1):
                r[k + i] -= c * h[i]
    if any(r[:dh]):
        return None
    return q


def _iprem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of f by g."""
    r = list(f)
    dg = len(g) - 1
    lc = g[-1]
    while r and len(r) - 1 >= dg:
        c = r[-1]
        shift = len(r) - 1 - dg
        r = [a * lc for a in r]
        for i in range(dg + 1):
            r[shift + i] -= c * g[i]
        _istrip(r)
    return r


def _cauchy_bound(p: Sequence[int]) -> int:
    lc = abs(p[-1])
    return 1 + max((abs(c) + lc - 1) // lc for c in p[:-1]) if len(p) > 1 else 1


def _heugcd(f: list[int], g: list[int]) -> list[int] | None:
    """Heuristic gcd of primitive integer polynomials, certified or None.

    A candidate h with h | f, h | g is accepted only when xi exceeds the
    Cauchy root bound of f by more than the content c of the reconstructed
    polynomial; any cofactor k of h inside the true gcd would then satisfy
    |k(xi)| > c, contradicting k(xi) | c.
    """
    bound = min(_cauchy_bound(f), _cauchy_bound(g))
    norm = min(max(abs(c) for c in f), max(abs(c) for c in g))
    xi = max(2 * norm + 2, bound + 2)
    for _ in range(8):
        gam = math.gcd(_ieval(f, xi), _ieval(g, xi))
        if gam:
            recon = []
            v = gam
            half = xi // 2
            while v:
                d = v % xi
                if d > half:
                    d -= xi
                recon.append(d)
                v = (v - d) // xi
            c = _icontent(recon)
            h = _iprimitive(recon)
            if xi - bound > c and _iexact_quotient(f, h) is not None and _iexact_quotient(g, h) is not None:
                return h
        xi = xi * 2 + 17
    return None


def _igcd_poly(f: list[int], g: list[int]) -> list[int]:
    """Primitive gcd of integer polynomials (positive leading coefficient)."""
    if not f:
        return _iprimitive(list(g))
    if not g:
        return _iprimitive(list(f))
    f, g = _iprimitive(list(f)), _iprimitive(list(g))
    if len(f) == 1 or len(g) == 1:
        return [1]
    h = _heugcd(f, g)
    if h is not None:
        return h
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = _iprem(f, g)
        f, g = g, _iprimitive(r)
    return _iprimitive(f)


def _to_int_poly(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    """Scale rational coefficients to integers: returns (ints, denominator)."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in coeffs], den


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial over Q, coefficients in ascending degree."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [c if isinstance(c, Fraction) else parse_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var

    @classmethod
    def _raw(cls, coeffs: tuple, var: str = "x") -> "UniPoly":
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        obj.var = var
        return obj

    @classmethod
    def const(cls, c, var: str = "x") -> "UniPoly":
        return cls((c,), var)

    @classmethod
    def gen(cls, var: str = "x") -> "UniPoly":
        return cls((0, 1), var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "x") -> "UniPoly":
        return cls([0] * k + [c], var)

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly((other,), self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return UniPoly((), self.var)
            return UniPoly._raw(tuple(c * other for c in self.coeffs), self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly((1,), self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        inv = 1 / other.lc
        if len(r) - 1 < db:
            return UniPoly((), self.var), self
        q = [Fraction(0)] * (len(r) - db)
        b = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv
            q[k] = c
            if c:
                for i in range(db + 1):
                    r[k + i] -= c * b[i]
        return UniPoly(q, self.var), UniPoly(r[:db], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "UniPoly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly((other,), self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, UniPoly) else UniPoly((), self.var)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def reverse(self, n: int | None = None) -> "UniPoly":
        """x^n * p(1/x); n defaults to the degree."""
        if self.is_zero():
            return self
        n = self.degree if n is None else n
        if n < self.degree:
            raise ValueError("reversal length below degree")
        return UniPoly(tuple(reversed(self.coeffs)) + (), self.var) * UniPoly.monomial(n - self.degree, var=self.var)

    def valuation(self) -> int | None:
        """Order of vanishing at 0 (None for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly._raw(self.coeffs, var)

    def to_json(self) -> list[str]:
        return [format_rat(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence, var: str = "x") -> "UniPoly":
        return cls([parse_rat(c) for c in data], var)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"({c})*{mono}")
        return " + ".join(reversed(terms))


def gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd over Q (zero only when both inputs are zero)."""
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    fp, _ = _to_int_poly(p.coeffs)
    fq, _ = _to_int_poly(q.coeffs)
    return UniPoly(_igcd_poly(fp, fq), p.var).monic()


def xgcd(p: UniPoly, q: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """(g, s, t) with s*p + t*q = g, g monic."""
    r0, r1 = p, q
    s0, s1 = UniPoly.const(1, p.var), UniPoly((), p.var)
    t0, t1 = UniPoly((), p.var), UniPoly.const(1, p.var)
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def lcm(p: UniPoly, q: UniPoly) -> UniPoly:
    if p.is_zero() or q.is_zero():
        return UniPoly((), p.var)
    return (p * q).exact_div(gcd(p, q)).monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """Monic product of the distinct irreducible factors of p."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.is_const():
        return UniPoly.const(1, p.var)
    return p.exact_div(gcd(p, p.derivative())).monic()


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Sparse Laurent polynomial: exponent -> nonzero rational."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            c = c if isinstance(c, Fraction) else parse_rat(c)
            if c:
                clean[int(k)] = c
        self.terms: dict[int, Fraction] = clean

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def from_poly(cls, p: UniPoly, shift: int = 0) -> "LaurentPoly":
        return cls({i + shift: c for i, c in enumerate(p.coeffs)})

    @property
    def min_exp(self) -> int | None:
        return min(self.terms) if self.terms else None

    @property
    def max_exp(self) -> int | None:
        return max(self.terms) if self.terms else None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, k: int) -> Fraction:
        return self.terms.get(k, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({0: other})
        if isinstance(other, UniPoly):
            return LaurentPoly.from_poly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by x^k."""
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def inv_monomial(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise ArithmeticError("only monomials are units in the Laurent ring")
        (k, c), = self.terms.items()
        return LaurentPoly({-k: 1 / c})

    def to_poly(self, var: str = "x") -> UniPoly:
        """The polynomial in x; fails on negative exponents."""
        if self.terms and self.min_exp < 0:
            raise ArithmeticError("Laurent polynomial has negative exponents")
        if not self.terms:
            return UniPoly((), var)
        return UniPoly([self.coeff(k) for k in range(self.max_exp + 1)], var)

    def to_inv_poly(self, var: str = "y") -> UniPoly:
        """The polynomial in y = 1/x; fails on positive exponents."""
        if self.terms and self.max_exp > 0:
            raise ArithmeticError("Laurent polynomial has positive exponents")
        if not self.terms:
            return UniPoly((), var)
        return UniPoly([self.coeff(-k) for k in range(-self.min_exp + 1)], var)

    def in_x(self) -> bool:
        return not self.terms or self.min_exp >= 0

    def in_inv_x(self) -> bool:
        return not self.terms or self.max_exp <= 0

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_json(self) -> list:
        if not self.terms:
            return [0, []]
        lo = self.min_exp
        return [lo, [format_rat(self.coeff(k)) for k in range(lo, self.max_exp + 1)]]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        lo, arr = data
        return cls({lo + i: parse_rat(c) for i, c in enumerate(arr)})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*x^{k}" for k, c in sorted(self.terms.items(), reverse=True))


# ---------------------------------------------------------------------------
# bivariate polynomials (base variable x, fiber variable z)
# ---------------------------------------------------------------------------


class BiPoly:
    """Sparse polynomial in a base variable and a fiber variable over Q.

    Keys are ``(i, j)`` for the monomial ``x^i z^j``.
    """

    __slots__ = ("terms", "names")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None, names=("x", "z")):
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = c if isinstance(c, Fraction) else parse_rat(c)
            if c:
                clean[(int(i), int(j))] = c
        self.terms: dict[tuple[int, int], Fraction] = clean
        self.names = tuple(names)

    @classmethod
    def from_fiber_coeffs(cls, coeffs: Sequence[UniPoly], names=("x", "z")) -> "BiPoly":
        """sum_j coeffs[j](x) * z^j."""
        terms = {}
        for j, p in enumerate(coeffs):
            for i, c in enumerate(p.coeffs):
                if c:
                    terms[(i, j)] = c
        return cls(terms, names)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def deg_base(self) -> int | None:
        return max(i for i, _ in self.terms) if self.terms else None

    @property
    def deg_fiber(self) -> int | None:
        return max(j for _, j in self.terms) if self.terms else None

    def fiber_coeff(self, j: int) -> UniPoly:
        """Coefficient of z^j as a polynomial in x."""
        d = {i: c for (i, jj), c in self.terms.items() if jj == j}
        if not d:
            return UniPoly((), self.names[0])
        return UniPoly([d.get(i, 0) for i in range(max(d) + 1)], self.names[0])

    def fiber_coeffs(self) -> list[UniPoly]:
        if not self.terms:
            return []
        return [self.fiber_coeff(j) for j in range(self.deg_fiber + 1)]

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out, self.names)

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c * other for k, c in self.terms.items()}, self.names)
        out: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + a * b
        return BiPoly(out, self.names)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def d_base(self) -> "BiPoly":
        return BiPoly({(i - 1, j): i * c for (i, j), c in self.terms.items() if i}, self.names)

    def d_fiber(self) -> "BiPoly":
        return BiPoly({(i, j - 1): j * c for (i, j), c in self.terms.items() if j}, self.names)

    def at_base(self, x0) -> UniPoly:
        """Specialize the base variable: a polynomial in the fiber variable."""
        x0 = parse_rat(x0)
        if not self.terms:
            return UniPoly((), self.names[1])
        out = [Fraction(0)] * (self.deg_fiber + 1)
        for (i, j), c in self.terms.items():
            out[j] += c * x0**i
        return UniPoly(out, self.names[1])

    def fiber_reversed(self, n: int | None = None) -> "BiPoly":
        """z^n * F(x, 1/z)."""
        n = self.deg_fiber if n is None else n
        return BiPoly({(i, n - j): c for (i, j), c in self.terms.items()}, self.names)

    def __repr__(self):
        if not self.terms:
            return "0"
        x, z = self.names
        return " + ".join(f"({c})*{x}^{i}*{z}^{j}" for (i, j), c in sorted(self.terms.items(), reverse=True))


def _bareiss_det_int(rows: list[list[int]]) -> int:
    n = len(rows)
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def _sylvester_int(f: Sequence[int], g: Sequence[int], n: int, k: int) -> list[list[int]]:
    """Sylvester matrix for formal degrees n = deg f, k = deg g (descending)."""
    size = n + k
    fd = [f[n - t] if n - t < len(f) else 0 for t in range(n + 1)]
    gd = [g[k - t] if k - t < len(g) else 0 for t in range(k + 1)]
    rows = []
    for r in range(k):
        rows.append([0] * r + fd + [0] * (size - n - 1 - r))
    for r in range(n):
        rows.append([0] * r + gd + [0] * (size - k - 1 - r))
    return rows


def _interpolate_int(values: list[int]) -> list[Fraction]:
    """Coefficients of the polynomial taking values[i] at x = i."""
    n = len(values)
    diffs = []
    cur = list(values)
    for _ in range(n):
        diffs.append(cur[0])
        cur = [cur[i + 1] - cur[i] for i in range(len(cur) - 1)]
    # sum_j diffs[j] * C(x, j); accumulate in integers scaled by (n-1)!
    total = math.factorial(n - 1)
    acc = [0] * n
    falling = [1]  # x (x-1) ... (x-j+1)
    for j in range(n):
        if diffs[j]:
            scale = diffs[j] * (total // math.factorial(j))
            for i, c in enumerate(falling):
                acc[i] += scale * c
        nxt = [0] * (len(falling) + 1)
        for i, c in enumerate(falling):
            nxt[i + 1] += c
            nxt[i] -= j * c
        falling = nxt
    return [Fraction(c, total) for c in acc]


def resultant_fiber(F: BiPoly, G: BiPoly) -> UniPoly:
    """Sylvester resultant with respect to the fiber variable.

    The formal fiber degrees are the degrees of F and G as bivariate
    polynomials, so the value at x0 is the Sylvester determinant of the
    specialized coefficient rows even when leading coefficients vanish there.
    Computed by exact evaluation at integer points and interpolation.
    """
    if F.is_zero() or G.is_zero():
        raise ValueError("resultant of a zero polynomial")
    var = F.names[0]
    n, k = F.deg_fiber, G.deg_fiber
    fc = [p for p in F.fiber_coeffs()]
    gc = [p for p in G.fiber_coeffs()]
    if n == 0 and k == 0:
        return UniPoly.const(1, var)
    if n == 0:
        return fc[0] ** k
    if k == 0:
        return gc[0] ** n
    fden = 1
    for p in fc:
        for c in p.coeffs:
            fden = fden * c.denominator // math.gcd(fden, c.denominator)
    gden = 1
    for p in gc:
        for c in p.coeffs:
            gden = gden * c.denominator // math.gcd(gden, c.denominator)
    fi = [[int(c * fden) for c in p.coeffs] for p in fc]
    gi = [[int(c * gden) for c in p.coeffs] for p in gc]
    bound = k * (F.deg_base or 0) + n * (G.deg_base or 0)
    values = []
    for x0 in range(bound + 1):
        fv = [_ieval(p, x0) for p in fi]
        gv = [_ieval(p, x0) for p in gi]
        values.append(_bareiss_det_int(_sylvester_int(fv, gv, n, k)))
    coeffs = _interpolate_int(values)
    scale = Fraction(1, fden**k * gden**n)
    return UniPoly([c * scale for c in coeffs], var)


# ---------------------------------------------------------------------------
# quotient rings Q[x]/(g) with dynamic evaluation
# ---------------------------------------------------------------------------


class SplitEvent(Exception):
    """A zero divisor was met: the modulus factors as ``g1 * g2``.

    Callers re-run their computation over each factor.
    """

    def __init__(self, g1: UniPoly, g2: UniPoly):
        super().__init__(f"modulus splits as ({g1}) * ({g2})")
        self.g1 = g1
        self.g2 = g2

    @property
    def factors(self) -> tuple[UniPoly, UniPoly]:
        return self.g1, self.g2


@dataclass(frozen=True)
class QuotientCtx:
    """Arithmetic in Q[x]/(modulus) for a squarefree modulus."""

    modulus: UniPoly

    def __post_init__(self):
        g = self.modulus
        if g.is_zero() or g.is_const():
            raise ValueError("modulus must be a nonconstant polynomial")
        object.__setattr__(self, "modulus", g.monic())

    def reduce(self, a) -> UniPoly:
        if not isinstance(a, UniPoly):
            a = UniPoly.const(a, self.modulus.var)
        return a % self.modulus

    def add(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return self.reduce(a + b)

    def sub(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return self.reduce(a - b)

    def mul(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return self.reduce(a * b)

    def is_zero(self, a: UniPoly) -> bool:
        return self.reduce(a).is_zero()

    def inverse(self, a: UniPoly) -> UniPoly:
        """Inverse of a residue, or raise SplitEvent on a zero divisor."""
        a = self.reduce(a)
        if a.is_zero():
            raise ZeroDivisionError("inversion of the zero residue")
        g, s, _ = xgcd(a, self.modulus)
        if g.degree == 0:
            return self.reduce(s)
        raise SplitEvent(g, self.modulus.exact_div(g).monic())

    def div(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return self.mul(a, self.inverse(b))

    def op(self, name: str, a: UniPoly, b: UniPoly | None = None) -> UniPoly:
        if name == "inv":
            return self.inverse(a)
        return getattr(self, name)(a, b)
