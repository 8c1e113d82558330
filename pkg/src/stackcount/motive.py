"""Exact symbolic classes in the Grothendieck ring of stacks.

A class is a reduced fraction num/den of integer-coefficient polynomials in
the Lefschetz indeterminate L.  The canonical form divides out the polynomial
gcd, clears rational content, and fixes the sign of the denominator's leading
coefficient, so equal classes are equal tuples.  Intermediate expressions may
carry (L+1) denominators; every class the closed formulas produce must reduce
to a polynomial in L, and callers assert that at construction points.

Specializing L -> q turns a class into an exact weighted point count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .ffield import DegenerateInputError

ZPoly = tuple[int, ...]  # ascending coefficients over Z; () is zero


def _ztrim(c) -> ZPoly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _zadd(u: ZPoly, v: ZPoly) -> ZPoly:
    if len(u) < len(v):
        u, v = v, u
    out = list(u)
    for i, b in enumerate(v):
        out[i] += b
    return _ztrim(out)


def _zneg(u: ZPoly) -> ZPoly:
    return tuple(-a for a in u)


def _zmul(u: ZPoly, v: ZPoly) -> ZPoly:
    if not u or not v:
        return ()
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] += a * b
    return tuple(out)


def _zcontent(u: ZPoly) -> int:
    c = 0
    for a in u:
        c = gcd(c, a)
    return c


def _qdivmod(u: list[Fraction], v: list[Fraction]):
    if not v:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(u)
    dv = len(v) - 1
    quo = [Fraction(0)] * max(0, len(rem) - dv)
    for i in range(len(rem) - 1, dv - 1, -1):
        if rem[i]:
            q = rem[i] / v[-1]
            quo[i - dv] = q
            for j in range(dv + 1):
                rem[i - dv + j] -= q * v[j]
    while rem and not rem[-1]:
        rem.pop()
    return quo, rem


def _zgcd_poly(u: ZPoly, v: ZPoly) -> ZPoly:
    """Primitive positive-leading gcd of two integer polynomials."""
    a = [Fraction(c) for c in u]
    b = [Fraction(c) for c in v]
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, r
    if not a:
        return ()
    # clear denominators, take primitive part, positive leading coefficient
    denom = 1
    for c in a:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = _ztrim([int(c * denom) for c in a])
    content = _zcontent(ints)
    ints = tuple(c // content for c in ints)
    if ints[-1] < 0:
        ints = _zneg(ints)
    return ints


@dataclass(frozen=True)
class MotiveClass:
    """Reduced fraction of integer polynomials in L; hashable and canonical."""

    num: ZPoly
    den: ZPoly

    @classmethod
    def make(cls, num, den=(1,)) -> "MotiveClass":
        num = _ztrim(num)
        den = _ztrim(den)
        if not den:
            raise ZeroDivisionError("zero denominator in Grothendieck ring")
        if not num:
            return cls((), (1,))
        g = _zgcd_poly(num, den)
        if len(g) > 1 or g != (1,):
            qn, rn = _qdivmod([Fraction(c) for c in num], [Fraction(c) for c in g])
            qd, rd = _qdivmod([Fraction(c) for c in den], [Fraction(c) for c in g])
            assert not rn and not rd
            denom = 1
            for c in list(qn) + list(qd):
                denom = denom * c.denominator // gcd(denom, c.denominator)
            num = _ztrim([int(c * denom) for c in qn])
            den = _ztrim([int(c * denom) for c in qd])
        c = gcd(_zcontent(num), _zcontent(den))
        num = tuple(a // c for a in num)
        den = tuple(a // c for a in den)
        if den[-1] < 0:
            num = _zneg(num)
            den = _zneg(den)
        return cls(num, den)

    # constructors -----------------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "MotiveClass":
        return cls.make((n,))

    @classmethod
    def lefschetz(cls, power: int = 1) -> "MotiveClass":
        if power < 0:
            return cls.make((1,), (0,) * (-power) + (1,))
        return cls.make((0,) * power + (1,))

    # ring structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other: "MotiveClass") -> "MotiveClass":
        return MotiveClass.make(
            _zadd(_zmul(self.num, other.den), _zmul(other.num, self.den)),
            _zmul(self.den, other.den),
        )

    def __sub__(self, other: "MotiveClass") -> "MotiveClass":
        return self + (-other)

    def __neg__(self) -> "MotiveClass":
        return MotiveClass(_zneg(self.num), self.den)

    def __mul__(self, other: "MotiveClass") -> "MotiveClass":
        return MotiveClass.make(
            _zmul(self.num, other.num), _zmul(self.den, other.den)
        )

    def __truediv__(self, other: "MotiveClass") -> "MotiveClass":
        if other.is_zero:
            raise ZeroDivisionError("division by the zero class")
        return MotiveClass.make(
            _zmul(self.num, other.den), _zmul(self.den, other.num)
        )

    def __pow__(self, e: int) -> "MotiveClass":
        if e < 0:
            return MotiveClass.make(self.den, self.num) ** (-e)
        result = MotiveClass.from_int(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # inspection ---------------------------------------------------------------

    @property
    def is_polynomial(self) -> bool:
        return self.den == (1,)

    def assert_polynomial(self, context: str = "") -> "MotiveClass":
        if not self.is_polynomial:
            where = f" in {context}" if context else ""
            raise AssertionError(f"class failed to reduce to a polynomial in L{where}: {self}")
        return self

    def specialize(self, q: int) -> Fraction:
        den = sum(c * q**i for i, c in enumerate(self.den))
        if den == 0:
            raise DegenerateInputError(f"pole of motive class at q={q}")
        num = sum(c * q**i for i, c in enumerate(self.num))
        return Fraction(num, den)

    def __repr__(self) -> str:
        def render(poly: ZPoly) -> str:
            if not poly:
                return "0"
            terms = []
            for i in range(len(poly) - 1, -1, -1):
                c = poly[i]
                if not c:
                    continue
                if i == 0:
                    terms.append(f"{c}")
                else:
                    mono = "L" if i == 1 else f"L^{i}"
                    if c == 1:
                        terms.append(mono)
                    elif c == -1:
                        terms.append(f"-{mono}")
                    else:
                        terms.append(f"{c}*{mono}")
            return " + ".join(terms).replace("+ -", "- ")

        if self.is_polynomial:
            return render(self.num)
        return f"({render(self.num)}) / ({render(self.den)})"

    def to_json(self):
        return {"num": list(self.num) or [0], "den": list(self.den)}

    @classmethod
    def from_json(cls, obj) -> "MotiveClass":
        return cls.make(tuple(obj["num"]), tuple(obj["den"]))


ZERO = MotiveClass.make(())
ONE = MotiveClass.from_int(1)
L = MotiveClass.lefschetz()


def ring_ops(a: MotiveClass, b: MotiveClass, op: str) -> MotiveClass:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown ring op {op!r}")


def proj_motive(n: int) -> MotiveClass:
    """{P^n} = 1 + L + ... + L^n, with {P^-1} = 0 (the empty space)."""
    if n == -1:
        return ZERO
    if n < -1:
        raise ValueError("projective space of dimension < -1")
    return MotiveClass.make((1,) * (n + 1))


def gm_motive() -> MotiveClass:
    """{G_m} = L - 1."""
    return L - ONE


def poly1_motive(d1: int, d2: int) -> MotiveClass:
    """Class of coprime monic pairs of degrees (d1, d2)."""
    if d1 < 0 or d2 < 0:
        raise ValueError("degrees must be non-negative")
    if d1 == 0 or d2 == 0:
        return MotiveClass.lefschetz(d1 + d2)
    return MotiveClass.lefschetz(d1 + d2) - MotiveClass.lefschetz(d1 + d2 - 1)


def _poly_geq_closed(a: int, b: int, d1: int, d2: int) -> MotiveClass:
    # Pairs with first coordinate vanishing to order >= a at 0 and second
    # exactly b, no other common zero; zero class when a condition exceeds
    # its degree.  Depends only on the slacks alpha = d1-a, beta = d2-b.
    if a > d1 or b > d2:
        return ZERO
    alpha = d1 - a
    beta = d2 - b
    if beta == 0:
        return MotiveClass.lefschetz(alpha)
    if alpha < beta:
        num = MotiveClass.lefschetz(alpha + beta) + MotiveClass.lefschetz(beta - alpha - 1)
    else:
        num = MotiveClass.lefschetz(alpha + beta) - MotiveClass.lefschetz(alpha - beta)
    return (L - ONE) * num / (L + ONE)


def _poly_geq_recursive(a: int, b: int, d1: int, d2: int) -> MotiveClass:
    # Telescoping route: peel coprime pairs off and swap the coordinates.
    if a > d1 or b > d2:
        return ZERO
    alpha = d1 - a
    beta = d2 - b
    if beta == 0:
        return MotiveClass.lefschetz(alpha)
    if alpha == 0:
        return (L - ONE) * MotiveClass.lefschetz(beta - 1)
    return poly1_motive(alpha, beta) - _poly_geq_recursive(b + 1, a, d2, d1)


def poly_cond_motive(
    shape: str, a: int, b: int, d1: int, d2: int, recursive: bool = False
) -> MotiveClass:
    """Class of monic pairs with a vanishing condition at 0.

    shape is one of "geq_exact" (>= a, b), "exact_geq" (a, >= b) and
    "exact_exact" (a, b); a and b are positive and bounded by the degrees.
    The closed form and the telescoping recursion are both available and
    must agree.
    """
    if a < 1 or b < 1:
        raise ValueError("vanishing orders must be positive")
    if a > d1 or b > d2:
        raise ValueError("vanishing condition exceeds the degree")
    geq = _poly_geq_recursive if recursive else _poly_geq_closed
    if shape == "geq_exact":
        return geq(a, b, d1, d2)
    if shape == "exact_geq":
        # coordinate swap symmetry: {(a, >=b)} on (d1,d2) = {(>=b, a)} on (d2,d1)
        return geq(b, a, d2, d1)
    if shape == "exact_exact":
        return poly1_motive(d1 - a, d2 - b) - geq(a + 1, b, d1, d2) - geq(b + 1, a, d2, d1)
    raise ValueError(f"unknown condition shape {shape!r}")


def stratum_gamma_motive(lam0: int, lam1: int, n: int, gamma) -> MotiveClass:
    """Class of the height-n stratum with one base point of vanishing type gamma.

    gamma is a VanishingCondition (wls module); it must be realizable for the
    weight pair at height n.  The formula fibers the stratum over the base
    point's position and stratifies the fiber by the affine degrees of the
    two forms, one Poly-space class per stratum.
    """
    gamma.require_realizable(lam0, lam1, n)
    return _stratum_gamma_cached(lam0, lam1, n, gamma)


@lru_cache(maxsize=None)
def _stratum_gamma_cached(lam0: int, lam1: int, n: int, gamma) -> MotiveClass:
    d1_full, d2_full = lam0 * n, lam1 * n

    def cond(d1: int, d2: int) -> MotiveClass:
        return poly_cond_motive(gamma.shape, gamma.a, gamma.b, d1, d2)

    total = cond(d1_full, d2_full)
    for k in range(gamma.a, d1_full):
        total = total + cond(k, d2_full)
    for l in range(gamma.b, d2_full):
        total = total + cond(d1_full, l)
    result = (L + ONE) * (L - ONE) * total
    return result.assert_polynomial("stratum_gamma_motive")


def wmin_motive(weights, n: int) -> MotiveClass:
    """Class of minimal weighted linear series of height n on P^1."""
    weights = tuple(weights)
    if not weights or any(w < 1 for w in weights):
        raise ValueError("weights must be positive integers")
    if n < 0:
        raise ValueError("height must be non-negative")
    return _wmin_cached(weights, n)


@lru_cache(maxsize=None)
def _wmin_cached(weights: tuple[int, ...], n: int) -> MotiveClass:
    cap_n = len(weights) - 1
    total = sum(weights)
    pn = proj_motive(cap_n)
    tail = proj_motive(total - cap_n - 2)
    if n == 0:
        return pn
    if n == 1:
        out = pn * (MotiveClass.lefschetz(total) - L) + MotiveClass.lefschetz(cap_n + 1) * tail
    else:
        out = (
            MotiveClass.lefschetz((n - 2) * total + cap_n + 2)
            * (MotiveClass.lefschetz(total - 1) - ONE)
            * (MotiveClass.lefschetz(total - cap_n - 1) * pn + tail)
        )
    return out.assert_polynomial("wmin_motive")


def inertia_wmin_motive(weights, n: int, orders: dict[int, int]) -> MotiveClass:
    """Class of the inertia stack: unit-order-weighted sum over sub-weight sets.

    orders maps each divisor d of q-1 to the number of units of exact order d
    (ffield.units_by_order); a unit of order d fixes exactly the series
    supported on weights divisible by d.
    """
    weights = tuple(weights)
    out = ZERO
    for d, count in sorted(orders.items()):
        sub = tuple(w for w in weights if w % d == 0)
        if not sub:
            continue
        out = out + MotiveClass.from_int(count) * wmin_motive(sub, n)
    return out.assert_polynomial("inertia_wmin_motive")


@dataclass(frozen=True)
class MotiveSeries:
    """Truncated formal power series with MotiveClass coefficients."""

    coeffs: tuple[MotiveClass, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> MotiveClass:
        return self.coeffs[n]

    def __add__(self, other: "MotiveSeries") -> "MotiveSeries":
        k = min(self.order, other.order)
        return MotiveSeries(tuple(self[i] + other[i] for i in range(k + 1)))

    def __mul__(self, other: "MotiveSeries") -> "MotiveSeries":
        k = min(self.order, other.order)
        out = []
        for m in range(k + 1):
            acc = ZERO
            for i in range(m + 1):
                acc = acc + self[i] * other[m - i]
            out.append(acc)
        return MotiveSeries(tuple(out))

    def to_json(self):
        return [c.to_json() for c in self.coeffs]


def zeta_series(weights, order: int = 8) -> MotiveSeries:
    """Height zeta series of the minimal-series moduli, truncated at t^order.

    Coefficient of t^n is the class of the height-n moduli; the closed form is
    (1 - L t)/(1 - L^|w| t) * ({P^N} + L^(N+1) {P^(|w|-N-2)} t).
    """
    weights = tuple(weights)
    cap_n = len(weights) - 1
    total = sum(weights)
    a = proj_motive(cap_n)
    b = MotiveClass.lefschetz(cap_n + 1) * proj_motive(total - cap_n - 2)
    # (1 - L t)(a + b t) = a + (b - L a) t - L b t^2, times sum L^(|w| j) t^j
    c0, c1, c2 = a, b - L * a, -(L * b)
    coeffs = []
    for n in range(order + 1):
        acc = c0 * MotiveClass.lefschetz(total * n)
        if n >= 1:
            acc = acc + c1 * MotiveClass.lefschetz(total * (n - 1))
        if n >= 2:
            acc = acc + c2 * MotiveClass.lefschetz(total * (n - 2))
        coeffs.append(acc.assert_polynomial("zeta_series"))
    return MotiveSeries(tuple(coeffs))


def sym_p1_series(order: int) -> MotiveSeries:
    """Motivic zeta of P^1: coefficient of t^e is {Sym^e P^1} = {P^e}."""
    return MotiveSeries(tuple(proj_motive(e) for e in range(order + 1)))


def ambient_identity_check(weights, order: int) -> bool:
    """Defect stratification identity: zeta * Z(t) matches the ambient classes.

    Coefficient n of the product must be the class of the full coefficient
    space mod scaling, (L^(n|w| + N + 1) - 1)/(L - 1), for all n <= order.
    """
    weights = tuple(weights)
    cap_n = len(weights) - 1
    total = sum(weights)
    product = zeta_series(weights, order) * sym_p1_series(order)
    for n in range(order + 1):
        if product[n] != proj_motive(n * total + cap_n):
            return False
    return True


def specialize(a: MotiveClass, q: int) -> Fraction:
    return a.specialize(q)
