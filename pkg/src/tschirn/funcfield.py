"""Function fields of covers of the line, their integral closures and colon lattices.

Every lattice lives in one ambient coordinate system: the power basis
1, eta, ..., eta^(m-1) of the function field over Q(x), where eta is a root of
a monic model with polynomial coefficients.  A lattice is stored as a
polynomial numerator matrix (columns are basis elements) over a common
monic denominator, plus a tag for its base ring (polynomials in x or in 1/x).

Integral closures are computed by Round-2 style enlargement at a squarefree
modulus g.  The radical of O/gO is the kernel of the trace form (valid in
characteristic zero) and the multiplier ring of the radical is the next
order.  Linear algebra over Q[x]/(g) uses dynamic evaluation: when a zero
divisor shows up the modulus splits and both factors are processed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import BiPoly, LaurentPoly, QuotientCtx, SplitEvent, UniPoly, gcd, lcm, resultant_fiber, squarefree_part
from .birkhoff import TransitionMatrix
from .polymat import LaurentMatrix, PolyMatrix, adjugate, determinant, hermite_form, rational_nullspace

__all__ = [
    "CoverEquation",
    "FieldElement",
    "Lattice",
    "PointIdeal",
    "RatFunc",
    "FuncFieldError",
    "ReducibleInputError",
    "TransitionError",
    "PointError",
    "make_integral",
    "power_basis_lattice",
    "integral_closure",
    "closure_at_infinity",
    "infinity_equation",
    "transition_matrix",
    "point_ideal",
    "colon_lattice",
    "twisted_pushforward",
]


class FuncFieldError(ArithmeticError):
    pass


class ReducibleInputError(FuncFieldError):
    """Raised with the message "reducible input"."""


class TransitionError(FuncFieldError):
    pass


class PointError(FuncFieldError):
    pass


_ZERO = UniPoly(())
_ONE = UniPoly((1,))
_X = UniPoly.gen()


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RatFunc:
    """Reduced fraction num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly = _ONE, reduced: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = _ZERO, _ONE
        elif not reduced and not den.is_const():
            g = gcd(num, den)
            if not g.is_const():
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    def __add__(self, o: "RatFunc") -> "RatFunc":
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return self + RatFunc(-o.num, o.den, True)

    def __mul__(self, o: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * o.num, self.den * o.den)

    def __truediv__(self, o: "RatFunc") -> "RatFunc":
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __eq__(self, o):
        return isinstance(o, RatFunc) and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_poly(self) -> bool:
        return self.den.is_const()

    def to_laurent(self) -> LaurentPoly | None:
        """The Laurent polynomial equal to this fraction, if any."""
        v = self.den.valuation()
        if self.den != UniPoly.monomial(v):
            return None
        return LaurentPoly.from_poly(self.num, -v)

    def substitute_inverse(self) -> "RatFunc":
        """f(x) -> f(1/x)."""
        if self.num.is_zero():
            return self
        dn, dd = self.num.degree, self.den.degree
        num, den = self.num.reverse(dn), self.den.reverse(dd)
        if dd > dn:
            num = num * UniPoly.monomial(dd - dn)
        else:
            den = den * UniPoly.monomial(dn - dd)
        return RatFunc(num, den)

    def __repr__(self):
        return f"({self.num})/({self.den})" if not self.den.is_const() else f"{self.num}"


def _common_denominator(entries: Sequence[Sequence[RatFunc]]) -> tuple[list[list[UniPoly]], UniPoly]:
    d = _ONE
    for r in entries:
        for q in r:
            if not q.den.is_const():
                d = lcm(d, q.den)
    return [[q.num * d.exact_div(q.den) for q in r] for r in entries], d


# ---------------------------------------------------------------------------
# cover equations and field arithmetic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverEquation:
    """Monic model eta^m + b_1 eta^(m-1) + ... + b_m with eta = scale * w.

    ``original`` holds the fiber coefficients a_0..a_m of the non-monic
    equation sum a_j(x) w^j that the model came from.
    """

    coeffs: tuple[UniPoly, ...]
    scale: UniPoly = _ONE
    original: tuple[UniPoly, ...] | None = None

    @property
    def m(self) -> int:
        return len(self.coeffs)

    @property
    def var(self) -> str:
        return self.scale.var

    def low_coeffs(self) -> list[UniPoly]:
        """a_0..a_(m-1) with eta^m = -sum a_j eta^j."""
        return [self.coeffs[self.m - 1 - j] for j in range(self.m)]

    def as_bipoly(self) -> BiPoly:
        return BiPoly.from_fiber_coeffs(self.low_coeffs() + [UniPoly.const(1, self.var)])

    def discriminant(self) -> UniPoly:
        f = self.as_bipoly()
        return resultant_fiber(f, f.d_fiber())

    # field arithmetic on polynomial coordinate vectors
    def mul_vec(self, u: Sequence[UniPoly], v: Sequence[UniPoly]) -> list[UniPoly]:
        m = self.m
        prod = [_ZERO] * (2 * m - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        prod[i + j] = prod[i + j] + a * b
        low = self.low_coeffs()
        for n in range(2 * m - 2, m - 1, -1):
            c = prod[n]
            if c:
                for j in range(m):
                    if low[j]:
                        prod[n - m + j] = prod[n - m + j] - c * low[j]
        return prod[:m]

    def power_traces(self) -> list[UniPoly]:
        """Tr(eta^k) for k = 0..2m-2 (Newton's identities)."""
        m = self.m
        # elementary symmetric functions up to sign: sum_{i} coeffs[i-1] eta^(m-i)
        b = self.coeffs
        p = [UniPoly.const(m, self.var)]
        for k in range(1, 2 * m - 1):
            acc = _ZERO
            for i in range(1, min(k, m) + 1):
                if i < k:
                    acc = acc - b[i - 1] * p[k - i]
                else:
                    acc = acc - b[i - 1] * k
            p.append(acc)
        return p

    def trace_vec(self, u: Sequence[UniPoly]) -> UniPoly:
        tr = self._traces()
        acc = _ZERO
        for a, t in zip(u, tr):
            if a:
                acc = acc + a * t
        return acc

    def _traces(self):
        cache = self.__dict__.get("_tr")
        if cache is None:
            cache = self.power_traces()[: self.m]
            object.__setattr__(self, "_tr", cache)
        return cache

    def to_json(self) -> dict:
        out = {"coefficients": [b.to_json() for b in self.coeffs], "scale": self.scale.to_json()}
        if self.original is not None:
            out["original"] = [a.to_json() for a in self.original]
        return out

    @classmethod
    def from_json(cls, data) -> "CoverEquation":
        orig = data.get("original")
        return cls(
            tuple(UniPoly.from_json(b) for b in data["coefficients"]),
            UniPoly.from_json(data.get("scale", ["1"])),
            tuple(UniPoly.from_json(a) for a in orig) if orig is not None else None,
        )


def make_integral(Faff: BiPoly) -> CoverEquation:
    """Monic model of sum a_j(x) w^j via eta = a_m(x) * w.

    With l = a_m the model has coefficients b_k = a_(m-k) * l^(k-1).
    """
    if Faff.is_zero():
        raise ValueError("zero equation")
    m = Faff.deg_fiber
    if m < 1:
        raise ValueError("fiber degree must be positive")
    a = Faff.fiber_coeffs()
    ell = a[m]
    if ell.is_zero():
        raise ValueError("zero leading coefficient; change charts")
    var = Faff.names[0]
    coeffs = tuple(a[m - k] * ell ** (k - 1) for k in range(1, m + 1))
    return CoverEquation(tuple(c.with_var(var) for c in coeffs), ell.with_var(var), tuple(a))


@dataclass(frozen=True)
class FieldElement:
    """Element num/den of the function field in power-basis coordinates."""

    num: tuple[UniPoly, ...]
    den: UniPoly = _ONE

    @classmethod
    def eta_power(cls, m: int, k: int) -> "FieldElement":
        return cls(tuple(_ONE if j == k else _ZERO for j in range(m)))

    def mul(self, other: "FieldElement", eq: CoverEquation) -> "FieldElement":
        return FieldElement(tuple(eq.mul_vec(self.num, other.num)), self.den * other.den)

    def scale(self, r: RatFunc) -> "FieldElement":
        return FieldElement(tuple(a * r.num for a in self.num), self.den * r.den)

    def entries(self) -> list[RatFunc]:
        return [RatFunc(a, self.den) for a in self.num]


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lattice:
    """Free module with basis ``numer / denom`` (columns) over Q[x] or Q[1/x]."""

    numer: PolyMatrix
    denom: UniPoly
    ring: str = "x"
    is_ring: bool = False
    eq: CoverEquation | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.ring not in ("x", "1/x"):
            raise ValueError(f"unknown base ring {self.ring!r}")
        if self.denom.lc != 1:
            c = 1 / self.denom.lc
            object.__setattr__(self, "denom", self.denom * c)
            object.__setattr__(self, "numer", self.numer.scale(c))

    @property
    def m(self) -> int:
        return self.numer.nrows

    def basis_element(self, j: int) -> FieldElement:
        return FieldElement(tuple(self.numer.column(j)), self.denom)

    def basis_entries(self) -> list[list[RatFunc]]:
        return [[RatFunc(a, self.denom) for a in r] for r in self.numer.rows]

    def _inverse_data(self):
        cache = self.__dict__.get("_inv")
        if cache is None:
            det = determinant(self.numer)
            if det.is_zero():
                raise FuncFieldError("singular lattice basis")
            cache = (adjugate(self.numer), det)
            object.__setattr__(self, "_inv", cache)
        return cache

    def coordinates(self, u: FieldElement) -> list[RatFunc]:
        """Coordinates of u in this basis."""
        adj, det = self._inverse_data()
        v = [sum((adj.rows[i][k] * u.num[k] for k in range(self.m) if u.num[k]), _ZERO) for i in range(self.m)]
        den = det * u.den
        return [RatFunc(a * self.denom, den) for a in v]

    def poly_coordinates(self, u: FieldElement) -> list[UniPoly] | None:
        """Coordinates over Q[x], or None if u is not in the (x-ring) lattice."""
        adj, det = self._inverse_data()
        den = det * u.den
        out = []
        for i in range(self.m):
            a = sum((adj.rows[i][k] * u.num[k] for k in range(self.m) if u.num[k]), _ZERO) * self.denom
            q, r = divmod(a, den)
            if r:
                return None
            out.append(q)
        return out

    def contains(self, u: FieldElement) -> bool:
        coords = self.coordinates(u)
        if self.ring == "x":
            return all(c.is_poly() for c in coords)
        for c in coords:
            lp = c.to_laurent()
            if lp is None or not lp.in_inv_x():
                return False
        return True

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(other.basis_element(j)) for j in range(other.m))

    def is_multiplicatively_closed(self) -> bool:
        if self.eq is None:
            raise FuncFieldError("lattice has no ambient equation attached")
        for i in range(self.m):
            for j in range(i, self.m):
                if not self.contains(self.basis_element(i).mul(self.basis_element(j), self.eq)):
                    return False
        return True

    def canonical(self) -> "Lattice":
        """Hermite-reduced basis with common factors of numerator and denominator removed.

        Only meaningful for lattices over Q[x].
        """
        if self.ring != "x":
            return self
        H = hermite_form(self.numer, with_transform=False).basis
        g = self.denom
        for r in H.rows:
            for a in r:
                if a:
                    g = gcd(g, a)
                    if g.is_const():
                        break
        if not g.is_const():
            H = PolyMatrix([[a.exact_div(g) for a in r] for r in H.rows])
            d = self.denom.exact_div(g)
        else:
            d = self.denom
        return Lattice(H, d, self.ring, self.is_ring, self.eq)

    def same_module(self, other: "Lattice") -> bool:
        return self.ring == other.ring and self.contains_lattice(other) and other.contains_lattice(self)

    def index_degree(self, other: "Lattice") -> int:
        """deg det of the change of basis from ``self`` to a sublattice ``other``."""
        num = determinant(other.numer) * self.denom ** self.m
        den = determinant(self.numer) * other.denom ** self.m
        r = RatFunc(num, den)
        return (r.num.degree or 0) - (r.den.degree or 0)

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "is_ring": self.is_ring,
            "denominator": self.denom.to_json(),
            "basis": self.numer.to_json(),
        }

    @classmethod
    def from_json(cls, data, eq: CoverEquation | None = None) -> "Lattice":
        return cls(
            PolyMatrix.from_json(data["basis"]),
            UniPoly.from_json(data["denominator"]),
            data.get("ring", "x"),
            bool(data.get("is_ring", False)),
            eq,
        )

    @classmethod
    def from_entries(cls, entries, ring="x", is_ring=False, eq=None) -> "Lattice":
        numer, d = _common_denominator(entries)
        return cls(PolyMatrix(numer), d, ring, is_ring, eq)


def power_basis_lattice(eq: CoverEquation) -> Lattice:
    return Lattice(PolyMatrix.identity(eq.m), UniPoly.const(1, eq.var), "x", True, eq)


# ---------------------------------------------------------------------------
# integral closure
# ---------------------------------------------------------------------------


def _kernel_mod(ctx: QuotientCtx, rows: list[list[UniPoly]], ncols: int) -> list[list[UniPoly]]:
    """Kernel basis of a matrix over Q[x]/(g); may raise SplitEvent."""
    a = [[ctx.reduce(v) for v in r] for r in rows]
    a = [r for r in a if any(not v.is_zero() for v in r)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = ctx.inverse(a[r][c])
        a[r] = [ctx.mul(v, inv) for v in a[r]]
        for i in range(len(a)):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [ctx.sub(vi, ctx.mul(f, vr)) for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [_ZERO] * ncols
        v[f] = _ONE
        for i, pc in enumerate(pivots):
            v[pc] = ctx.reduce(-a[i][f])
        basis.append(v)
    return basis


def _span_with_modulus(g: UniPoly, vectors: list[list[UniPoly]], m: int) -> PolyMatrix:
    """Basis of g*Q[x]^m + span(vectors)."""
    cols = [[g if i == j else _ZERO for i in range(m)] for j in range(m)] + [list(v) for v in vectors]
    M = PolyMatrix([[cols[j][i] for j in range(len(cols))] for i in range(m)])
    return hermite_form(M, with_transform=False).basis


def _round2_step(L: Lattice, eq: CoverEquation, ctx: QuotientCtx) -> Lattice | None:
    """One enlargement at the modulus of ``ctx``; None if already maximal there."""
    m = L.m
    g = ctx.modulus
    elems = [L.basis_element(j) for j in range(m)]
    C = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            c = L.poly_coordinates(elems[i].mul(elems[j], eq))
            if c is None:
                raise FuncFieldError("internal error: order is not multiplicatively closed")
            C[i][j] = C[j][i] = c
    d2 = L.denom
    traces = [eq.trace_vec(e.num).exact_div(d2) if not d2.is_const() else eq.trace_vec(e.num) * (1 / d2.lc) for e in elems]
    gram = [[sum((C[i][j][k] * traces[k] for k in range(m) if C[i][j][k]), _ZERO) for j in range(m)] for i in range(m)]
    rad = _kernel_mod(ctx, gram, m)
    if not rad:
        return None
    J = _span_with_modulus(g, rad, m)
    adjJ = adjugate(J)
    detJ = determinant(J)
    rows = []
    for j in range(m):
        # coordinates (in the radical's basis) of o_i * beta_j for every i
        block = []
        for i in range(m):
            v = [sum((J.rows[k][j] * C[i][k][l] for k in range(m) if J.rows[k][j]), _ZERO) for l in range(m)]
            w = []
            for r in range(m):
                a = sum((adjJ.rows[r][l] * v[l] for l in range(m) if v[l]), _ZERO)
                w.append(a.exact_div(detJ) if not detJ.is_const() else a * (1 / detJ.lc))
            block.append(w)
        for r in range(m):
            rows.append([block[i][r] for i in range(m)])
    mult = _kernel_mod(ctx, rows, m)
    S = _span_with_modulus(g, mult, m)
    if S == PolyMatrix.diagonal([g] * m):
        return None
    newN = L.numer @ S
    return Lattice(newN, L.denom * g, "x", True, eq).canonical()


def _default_modulus(eq: CoverEquation) -> UniPoly:
    disc = eq.discriminant()
    if disc.is_zero():
        raise ReducibleInputError("reducible input")
    if disc.is_const():
        return UniPoly.const(1, eq.var)
    return squarefree_part(gcd(disc, disc.derivative()))


def integral_closure(
    eq: CoverEquation, candidates: Sequence[UniPoly] | None = None, start: Lattice | None = None
) -> Lattice:
    """Integral closure of the base polynomial ring in the function field of ``eq``.

    ``candidates`` optionally lists moduli whose prime factors contain every
    prime where the power-basis order can fail to be maximal; by default this
    is the squarefree part of gcd(disc, disc').  ``start`` is an order to
    enlarge instead of the power basis (it must contain the power basis).
    """
    L = power_basis_lattice(eq) if start is None else start
    if eq.m == 1:
        return L
    if candidates is None:
        work = [_default_modulus(eq)]
    else:
        if eq.discriminant().is_zero():
            raise ReducibleInputError("reducible input")
        work = [squarefree_part(c) for c in candidates if not c.is_zero()]
    work = [g.monic() for g in work if not g.is_const()]
    while work:
        g = work.pop()
        ctx = QuotientCtx(g)
        while True:
            try:
                bigger = _round2_step(L, eq, ctx)
            except SplitEvent as ev:
                work.extend(f for f in ev.factors if not f.is_const())
                break
            except ZeroDivisionError as exc:
                raise ReducibleInputError("reducible input") from exc
            if bigger is None:
                break
            L = bigger
    return L


def infinity_equation(eq: CoverEquation, e: int, delta: int) -> CoverEquation:
    """Model of eta' = x^-(e+delta) eta over Q[x'], x' = 1/x."""
    wt = e + delta
    coeffs = []
    for k, b in enumerate(eq.coeffs, start=1):
        if b and b.degree > k * wt:
            raise FuncFieldError(f"coefficient b_{k} has degree {b.degree} > {k * wt}; bad (e, delta)")
        coeffs.append(b.reverse(k * wt) if b else _ZERO)
    scale = eq.scale.reverse(delta) if eq.scale and eq.scale.degree <= delta else _ONE
    return CoverEquation(tuple(coeffs), scale)


def closure_at_infinity(
    eq: CoverEquation, e: int, delta: int | None = None, candidates: Sequence[UniPoly] | None = None
) -> Lattice:
    """Integral closure over Q[1/x], expressed in the ambient power basis of ``eq``.

    The chart at infinity uses eta' = x^-(e+delta) * eta; ``delta`` defaults to
    the degree of the scaling polynomial of ``eq``.  ``candidates`` are passed
    to the closure over Q[x'] and are polynomials in x'.
    """
    if e < 1:
        raise ValueError("e must be positive")
    if delta is None:
        delta = eq.scale.degree or 0
    wt = e + delta
    eq_inf = infinity_equation(eq, e, delta)
    Linf = integral_closure(eq_inf, candidates)
    entries = []
    for r, row in enumerate(Linf.numer.rows):
        shift = RatFunc(_ONE, UniPoly.monomial(r * wt))
        entries.append([RatFunc(a, Linf.denom).substitute_inverse() * shift for a in row])
    return Lattice.from_entries(entries, "1/x", True, eq)


# ---------------------------------------------------------------------------
# transition matrices
# ---------------------------------------------------------------------------


def transition_matrix(M0: Lattice, M1: Lattice) -> TransitionMatrix:
    """T = basis(M0)^-1 basis(M1) as a Laurent matrix."""
    if M0.m != M1.m:
        raise TransitionError("lattices of different rank")
    adj, det = M0._inverse_data()
    A = adj @ M1.numer
    s = RatFunc(M0.denom, det * M1.denom)
    rows = []
    for r in A.rows:
        row = []
        for a in r:
            q = RatFunc(a) * s
            lp = q.to_laurent()
            if lp is None:
                raise TransitionError(f"non-Laurent transition entry {q}")
            row.append(lp)
        rows.append(row)
    try:
        return TransitionMatrix(LaurentMatrix(rows))
    except ArithmeticError as exc:
        raise TransitionError(str(exc)) from exc


# ---------------------------------------------------------------------------
# point ideals and colon lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointIdeal:
    """Elements of ``ring`` vanishing at a rational point over x = x0."""

    lattice: Lattice
    ring: Lattice
    x0: Fraction

    @property
    def uniformizer_base(self) -> UniPoly:
        return _X - self.x0


def _value_matrix(M: Lattice, s: FieldElement, x0: Fraction, eq: CoverEquation) -> list[list[Fraction]]:
    """Matrix of multiplication by s on M / (x - x0) M."""
    cols = []
    for j in range(M.m):
        c = M.poly_coordinates(s.mul(M.basis_element(j), eq))
        if c is None:
            raise PointError("element does not preserve the lattice")
        cols.append([a(x0) for a in c])
    return [[cols[j][i] for j in range(M.m)] for i in range(M.m)]


def point_ideal(
    M: Lattice,
    x0,
    fiber_value=None,
    separator: FieldElement | None = None,
    eq: CoverEquation | None = None,
    pole_numerator: FieldElement | None = None,
) -> PointIdeal:
    """Ideal of a rational point over x0.

    Two ways to name the point:

    * ``fiber_value``: the point is the only one over x0 where ``separator``
      (default eta) takes this value.  The ideal is the kernel of the unique
      character of M/(x - x0)M on which the separator acts by the value.
    * ``pole_numerator``: an element n of M such that n/(x - x0) has a simple
      pole at the point and no other pole over x0.  The ideal is
      {h in M : h n in (x - x0) M}.
    """
    eq = eq or M.eq
    if eq is None:
        raise FuncFieldError("no ambient equation")
    if M.ring != "x" or not M.is_ring:
        raise FuncFieldError("point ideals need a ring lattice over Q[x]")
    x0 = Fraction(x0)
    m = M.m
    pi = _X - x0
    if pole_numerator is not None:
        S = _value_matrix(M, pole_numerator, x0, eq)
        ker = rational_nullspace(S, m)
        if len(ker) != m - 1:
            raise PointError("pole numerator does not single out one simple pole")
        vecs = [[UniPoly.const(c) for c in v] for v in ker]
        J = _span_with_modulus(pi, vecs, m)
        return PointIdeal(Lattice(M.numer @ J, M.denom, "x", False, eq).canonical(), M, x0)
    if separator is None:
        separator = FieldElement.eta_power(m, 1 if m > 1 else 0)
        if m == 1 and fiber_value is None:
            fiber_value = 1
    if fiber_value is None:
        raise PointError("fiber value required")
    value = Fraction(fiber_value)
    S = _value_matrix(M, separator, x0, eq)
    shifted = [[S[i][j] - (value if i == j else 0) for j in range(m)] for i in range(m)]
    # left eigenvectors: lambda @ shifted = 0
    lams = rational_nullspace([[shifted[i][j] for i in range(m)] for j in range(m)], m)
    if not lams:
        raise PointError(f"no point of the curve over x = {x0} with value {value}")
    if len(lams) > 1:
        raise PointError("the value does not single out one rational point")
    lam = lams[0]
    one = M.poly_coordinates(FieldElement(tuple(_ONE if i == 0 else _ZERO for i in range(m))))
    norm = sum(l * a(x0) for l, a in zip(lam, one))
    if not norm:
        raise PointError("the point is not rational or not smooth")
    # kernel of the character, lifted to Q[x]^m, plus pi * M
    ker = rational_nullspace([lam], m)
    vecs = [[UniPoly.const(c) for c in v] for v in ker]
    J = _span_with_modulus(pi, vecs, m)
    # the character must be multiplicative: P is an ideal
    P = Lattice(M.numer @ J, M.denom, "x", False, eq).canonical()
    for i in range(m):
        for j in range(m):
            prod = M.basis_element(i).mul(P.basis_element(j), eq)
            if not P.contains(prod):
                raise PointError("the point is not rational or not smooth")
    return PointIdeal(P, M, x0)


def colon_lattice(M: Lattice, P, x0=None, eq: CoverEquation | None = None) -> Lattice:
    """{g : g P subset of M} for a lattice P containing (x - x0) times a ring acting on M."""
    eq = eq or M.eq
    if isinstance(P, PointIdeal):
        x0 = P.x0 if x0 is None else Fraction(x0)
        P = P.lattice
    if x0 is None:
        x0 = Fraction(0)
    x0 = Fraction(x0)
    pi = _X - x0
    m = M.m
    rows = []
    for j in range(m):
        beta = P.basis_element(j)
        cols = []
        for i in range(m):
            c = M.poly_coordinates(M.basis_element(i).mul(beta, eq))
            if c is None:
                raise FuncFieldError("P does not multiply M into itself")
            cols.append([a(x0) for a in c])
        for r in range(m):
            rows.append([cols[i][r] for i in range(m)])
    ker = rational_nullspace(rows, m)
    vecs = [[UniPoly.const(c) for c in v] for v in ker]
    S = _span_with_modulus(pi, vecs, m)
    return Lattice(M.numer @ S, M.denom * pi, "x", False, eq).canonical()


def twisted_pushforward(M0: Lattice, M1: Lattice, P: PointIdeal) -> TransitionMatrix:
    """Transition matrix of the pushforward of O_X(point) with the point over x = x0."""
    return transition_matrix(colon_lattice(M0, P), M1)
