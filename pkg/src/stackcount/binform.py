"""Binary forms over F_p and the places of the projective line.

A homogeneous form f(s, t) of degree D is stored as the tuple of its D+1
coefficients, index i holding the coefficient of s^(D-i) t^i.  The affine
chart is s = 1 (so the tuple read in ascending index order is the affine
polynomial in x = t/s) and the place at infinity is s = 0.  The zero form is
the empty tuple: it carries no degree, and every operation that would need
one rejects it.

Places are the closed points of P^1: the distinguished point at infinity
plus one place per monic irreducible polynomial in F_p[x].  Factoring a form
into places (squarefree decomposition, distinct-degree splitting, then
Cantor-Zassenhaus equal-degree splitting with an explicit seed) yields an
effective divisor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import total_ordering

from .ffield import DegenerateInputError, fp_inv

# ---------------------------------------------------------------------------
# Dense univariate polynomials over F_p: tuples of ints, ascending degree,
# no trailing zeros; () is the zero polynomial.  These back both the affine
# parts of binary forms and the census hot loops.
# ---------------------------------------------------------------------------

Poly = tuple[int, ...]


def poly_trim(c) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_deg(u: Poly) -> int:
    """Degree, with deg 0 for constants; raises on the zero polynomial."""
    if not u:
        raise DegenerateInputError("zero polynomial has no degree")
    return len(u) - 1


def poly_add(u: Poly, v: Poly, p: int) -> Poly:
    if len(u) < len(v):
        u, v = v, u
    out = list(u)
    for i, c in enumerate(v):
        out[i] = (out[i] + c) % p
    return poly_trim(out)


def poly_sub(u: Poly, v: Poly, p: int) -> Poly:
    out = list(u) + [0] * max(0, len(v) - len(u))
    for i, c in enumerate(v):
        out[i] = (out[i] - c) % p
    return poly_trim(out)


def poly_mul(u: Poly, v: Poly, p: int) -> Poly:
    if not u or not v:
        return ()
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] = (out[i + j] + a * b) % p
    return tuple(out)


def poly_scal(u: Poly, c: int, p: int) -> Poly:
    c %= p
    if c == 0:
        return ()
    return tuple(a * c % p for a in u)


def poly_divmod(u: Poly, v: Poly, p: int) -> tuple[Poly, Poly]:
    if not v:
        raise DegenerateInputError("polynomial division by zero")
    if len(u) < len(v):
        return (), u
    rem = list(u)
    dv = len(v) - 1
    inv_lead = fp_inv(v[-1], p)
    quo = [0] * (len(u) - dv)
    for i in range(len(u) - 1, dv - 1, -1):
        c = rem[i]
        if c:
            q = c * inv_lead % p
            quo[i - dv] = q
            for j in range(dv + 1):
                rem[i - dv + j] = (rem[i - dv + j] - q * v[j]) % p
    return poly_trim(quo), poly_trim(rem)


def poly_mod(u: Poly, v: Poly, p: int) -> Poly:
    return poly_divmod(u, v, p)[1]


def poly_quo(u: Poly, v: Poly, p: int) -> Poly:
    q, r = poly_divmod(u, v, p)
    if r:
        raise DegenerateInputError("inexact polynomial division")
    return q


def poly_monic(u: Poly, p: int) -> Poly:
    if not u:
        return ()
    if u[-1] == 1:
        return u
    return poly_scal(u, fp_inv(u[-1], p), p)


def poly_gcd(u: Poly, v: Poly, p: int) -> Poly:
    while v:
        u, v = v, poly_mod(u, v, p)
    return poly_monic(u, p)


def poly_pow_mod(u: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = (1,)
    u = poly_mod(u, m, p)
    while e > 0:
        if e & 1:
            result = poly_mod(poly_mul(result, u, p), m, p)
        u = poly_mod(poly_mul(u, u, p), m, p)
        e >>= 1
    return result


def poly_eval(u: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(u):
        acc = (acc * x + c) % p
    return acc


def poly_derivative(u: Poly, p: int) -> Poly:
    return poly_trim([i * c % p for i, c in enumerate(u)][1:])


def poly_valuation(u: Poly, v: Poly, p: int) -> int:
    """Largest k with v^k | u (u nonzero, v nonconstant)."""
    if not u:
        raise DegenerateInputError("zero polynomial has infinite valuation")
    k = 0
    while True:
        q, r = poly_divmod(u, v, p)
        if r:
            return k
        u = q
        k += 1


# ---------------------------------------------------------------------------
# Factorization over F_p
# ---------------------------------------------------------------------------


def _pth_root(u: Poly, p: int) -> Poly:
    # Frobenius fixes F_p, so the p-th root of sum a_i x^(p i) is sum a_i x^i.
    return tuple(u[i] for i in range(0, len(u), p))


def squarefree_decomposition(u: Poly, p: int) -> list[tuple[Poly, int]]:
    """Write monic(u) = prod v_i^(m_i) with the v_i monic squarefree coprime.

    Returns (v_i, m_i) pairs sorted by multiplicity; handles multiplicities
    divisible by p via p-th roots.
    """
    if not u:
        raise DegenerateInputError("cannot decompose the zero polynomial")
    parts: dict[int, Poly] = {}
    u = poly_monic(u, p)
    scale = 1
    while len(u) > 1:
        du = poly_derivative(u, p)
        if not du:
            u = _pth_root(u, p)
            scale *= p
            continue
        t = poly_gcd(u, du, p)
        v = poly_quo(u, t, p)
        k = 0
        while len(v) > 1:
            k += 1
            w = poly_gcd(t, v, p)
            z = poly_quo(v, w, p)
            if len(z) > 1:
                m = k * scale
                parts[m] = poly_mul(parts[m], z, p) if m in parts else z
            v = w
            t = poly_quo(t, w, p)
        u = t
    return [(v, m) for m, v in sorted(parts.items())]


def _distinct_degree(v: Poly, p: int) -> list[tuple[Poly, int]]:
    # v monic squarefree; returns (product of its irreducibles of degree d, d).
    out = []
    h: Poly = (0, 1)
    x: Poly = (0, 1)
    d = 0
    while len(v) - 1 >= 2 * (d + 1):
        d += 1
        h = poly_pow_mod(h, p, v, p)
        g = poly_gcd(v, poly_sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            v = poly_quo(v, g, p)
            h = poly_mod(h, v, p)
    if len(v) > 1:
        out.append((v, len(v) - 1))
    return out


def _equal_degree(g: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    # Cantor-Zassenhaus for odd p: g is a product of irreducibles of degree d.
    n = len(g) - 1
    if n == d:
        return [g]
    exponent = (p**d - 1) // 2
    while True:
        h = poly_trim([rng.randrange(p) for _ in range(n)])
        if len(h) <= 1:
            continue
        f = poly_gcd(h, g, p)
        if 1 < len(f) < len(g):
            pass  # lucky gcd split
        else:
            w = poly_pow_mod(h, exponent, g, p)
            f = poly_gcd(poly_sub(w, (1,), p), g, p)
            if not (1 < len(f) < len(g)):
                continue
        rest = poly_quo(g, f, p)
        return _equal_degree(f, d, p, rng) + _equal_degree(rest, d, p, rng)


def poly_factor(u: Poly, p: int, seed: int = 0) -> list[tuple[Poly, int]]:
    """Full factorization of a nonzero polynomial into monic irreducibles.

    Returns (irreducible, multiplicity) pairs in a canonical sorted order.
    Equal-degree splitting is randomized; the seed pins the run.
    """
    if not u:
        raise DegenerateInputError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    factors: list[tuple[Poly, int]] = []
    for v, mult in squarefree_decomposition(u, p):
        for block, d in _distinct_degree(v, p):
            for irr in _equal_degree(block, d, p, rng):
                factors.append((irr, mult))
    factors.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return factors


def poly_is_irreducible(u: Poly, p: int) -> bool:
    if len(u) <= 1:
        return False
    n = len(u) - 1
    u = poly_monic(u, p)
    x = poly_mod((0, 1), u, p)
    h = x
    for _ in range(n // 2):
        h = poly_pow_mod(h, p, u, p)
        if len(poly_gcd(poly_sub(h, x, p), u, p)) > 1:
            return False
    h = x
    for _ in range(n):
        h = poly_pow_mod(h, p, u, p)
    return poly_sub(h, x, p) == ()


def monic_irreducibles(p: int, max_degree: int) -> list[Poly]:
    """All monic irreducibles of degree 1..max_degree, canonically sorted."""
    out: list[Poly] = [(a, 1) for a in range(p)]
    known = list(out)
    for d in range(2, max_degree + 1):
        for idx in range(p**d):
            coeffs = []
            k = idx
            for _ in range(d):
                coeffs.append(k % p)
                k //= p
            cand = tuple(coeffs) + (1,)
            for irr in known:
                if 2 * (len(irr) - 1) > d:
                    break
                if not poly_mod(cand, irr, p):
                    break
            else:
                out.append(cand)
        known = [u for u in out if (len(u) - 1) * 2 <= d + 1]
        known.sort(key=lambda f: (len(f), f))
    out.sort(key=lambda f: (len(f), f))
    return out


# ---------------------------------------------------------------------------
# Places and divisors
# ---------------------------------------------------------------------------


@total_ordering
@dataclass(frozen=True)
class Place:
    """A closed point of P^1 over F_p: infinity, or a monic irreducible."""

    coeffs: Poly | None  # None encodes the place at infinity

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, coeffs) -> "Place":
        c = tuple(coeffs)
        if len(c) < 2 or c[-1] != 1:
            raise ValueError("finite places are monic polynomials of degree >= 1")
        return cls(c)

    @classmethod
    def rational(cls, x: int, p: int) -> "Place":
        """The place of the affine rational point t = x."""
        return cls.finite(((-x) % p, 1))

    @property
    def is_infinity(self) -> bool:
        return self.coeffs is None

    @property
    def deg(self) -> int:
        return 1 if self.coeffs is None else len(self.coeffs) - 1

    def _key(self):
        return (0, ()) if self.coeffs is None else (len(self.coeffs), self.coeffs)

    def __lt__(self, other: "Place") -> bool:
        return self._key() < other._key()

    def __repr__(self) -> str:
        return "Place(inf)" if self.is_infinity else f"Place{self.coeffs}"

    def to_json(self):
        if self.is_infinity:
            return "inf"
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj) -> "Place":
        if obj == "inf":
            return cls.infinity()
        return cls.finite(obj["coeffs"])


@dataclass(frozen=True)
class Divisor:
    """Effective divisor on P^1: distinct places with positive multiplicity."""

    entries: tuple[tuple[Place, int], ...]

    @classmethod
    def of(cls, pairs) -> "Divisor":
        merged: dict[Place, int] = {}
        for place, mult in pairs:
            if mult < 0:
                raise ValueError("divisor multiplicities must be non-negative")
            if mult:
                merged[place] = merged.get(place, 0) + mult
        return cls(tuple(sorted(merged.items(), key=lambda e: e[0]._key())))

    @classmethod
    def empty(cls) -> "Divisor":
        return cls(())

    @property
    def degree(self) -> int:
        return sum(m * pl.deg for pl, m in self.entries)

    def multiplicity(self, place: Place) -> int:
        for pl, m in self.entries:
            if pl == place:
                return m
        return 0

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def to_json(self):
        return [{"place": pl.to_json(), "mult": m} for pl, m in self.entries]


# ---------------------------------------------------------------------------
# Binary forms
# ---------------------------------------------------------------------------


class BinaryForm:
    """Homogeneous bivariate polynomial over F_p (possibly the zero form)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs, _checked: bool = False):
        if _checked:
            self.p = p
            self.coeffs = coeffs
            return
        c = tuple(int(a) % p for a in coeffs)
        if c and all(a == 0 for a in c):
            c = ()
        self.p = p
        self.coeffs = c

    # construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "BinaryForm":
        return cls(p, (), _checked=True)

    @classmethod
    def one(cls, p: int) -> "BinaryForm":
        return cls(p, (1,), _checked=True)

    @classmethod
    def from_affine(cls, p: int, affine, degree: int) -> "BinaryForm":
        """Homogenize an affine polynomial in x = t/s to the given degree."""
        u = poly_trim(tuple(a % p for a in affine))
        if not u:
            return cls.zero(p)
        if len(u) - 1 > degree:
            raise ValueError("affine degree exceeds form degree")
        return cls(p, u + (0,) * (degree + 1 - len(u)), _checked=True)

    @classmethod
    def monomial(cls, p: int, degree: int, t_power: int, coeff: int = 1) -> "BinaryForm":
        if not 0 <= t_power <= degree:
            raise ValueError("t power out of range")
        c = [0] * (degree + 1)
        c[t_power] = coeff % p
        return cls(p, c)

    # basic structure -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise DegenerateInputError("the zero form has no degree")
        return len(self.coeffs) - 1

    def affine(self) -> Poly:
        """The dehomogenization at s = 1, trailing zeros stripped."""
        return poly_trim(self.coeffs)

    @property
    def nu_infinity(self) -> int:
        """Order of vanishing at the place s = 0."""
        if not self.coeffs:
            raise DegenerateInputError("the zero form has infinite valuation")
        k = 0
        for a in reversed(self.coeffs):
            if a:
                break
            k += 1
        return k

    @property
    def leading_unit(self) -> int:
        """Coefficient of the highest nonzero t-power (affine leading coeff)."""
        for a in reversed(self.coeffs):
            if a:
                return a
        raise DegenerateInputError("the zero form has no leading unit")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryForm)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero:
            return f"BinaryForm(F{self.p}, 0)"
        return f"BinaryForm(F{self.p}, deg {self.degree}, {list(self.coeffs)})"

    # arithmetic ------------------------------------------------------------

    def _require_same_field(self, other: "BinaryForm") -> None:
        if self.p != other.p:
            raise ValueError("mixed characteristic")

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        self._require_same_field(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.degree != other.degree:
            raise DegenerateInputError("cannot add forms of different degrees")
        return BinaryForm(
            self.p, tuple((a + b) % self.p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + other.scalar_mul(-1)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        self._require_same_field(other)
        if self.is_zero or other.is_zero:
            return BinaryForm.zero(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + a * b) % self.p
        return BinaryForm(self.p, tuple(out), _checked=True)

    def __pow__(self, e: int) -> "BinaryForm":
        if e < 0:
            raise ValueError("negative form power")
        result = BinaryForm.one(self.p)
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scalar_mul(self, c: int) -> "BinaryForm":
        c %= self.p
        if c == 0:
            return BinaryForm.zero(self.p)
        return BinaryForm(
            self.p, tuple(a * c % self.p for a in self.coeffs), _checked=True
        )

    def eval_affine(self, x: int) -> int:
        """Value at the rational point (s:t) = (1:x)."""
        if self.is_zero:
            return 0
        return poly_eval(self.coeffs, x, self.p)

    def eval_infinity(self) -> int:
        """Value at (s:t) = (0:1)."""
        if self.is_zero:
            return 0
        return self.coeffs[-1]

    # serialization ----------------------------------------------------------

    def to_json(self):
        if self.is_zero:
            return None
        return {"deg": self.degree, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, p: int, obj) -> "BinaryForm":
        if obj is None:
            return cls.zero(p)
        coeffs = [int(a) for a in obj["coeffs"]]
        if len(coeffs) != int(obj["deg"]) + 1:
            raise ValueError("coeffs length must be deg + 1")
        return cls(p, coeffs)


def bf_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Monic-normalized homogeneous gcd (affine Euclid plus matched s-powers)."""
    f._require_same_field(g)
    p = f.p
    if f.is_zero and g.is_zero:
        raise DegenerateInputError("gcd of two zero forms")
    if f.is_zero or g.is_zero:
        h = g if f.is_zero else f
        aff = poly_monic(h.affine(), p)
        return BinaryForm.from_affine(p, aff, len(aff) - 1 + h.nu_infinity)
    s_power = min(f.nu_infinity, g.nu_infinity)
    aff = poly_gcd(f.affine(), g.affine(), p)
    return BinaryForm.from_affine(p, aff, len(aff) - 1 + s_power)


def valuation(f: BinaryForm, place: Place) -> int:
    """Order of vanishing of f at a place; rejects the zero form."""
    if f.is_zero:
        raise DegenerateInputError("the zero form has infinite valuation")
    if place.is_infinity:
        return f.nu_infinity
    return poly_valuation(f.affine(), place.coeffs, f.p)


def factor_divisor(f: BinaryForm, seed: int = 0) -> Divisor:
    """Factor a nonzero form into places: f = unit * s^k * prod P_i^(m_i)."""
    if f.is_zero:
        raise DegenerateInputError("cannot factor the zero form")
    entries: list[tuple[Place, int]] = []
    k = f.nu_infinity
    if k:
        entries.append((Place.infinity(), k))
    u = f.affine()
    if len(u) > 1:
        for irr, mult in poly_factor(u, f.p, seed):
            entries.append((Place.finite(irr), mult))
    return Divisor.of(entries)


def divisor_form(div: Divisor, p: int) -> BinaryForm:
    """The monic-normalized form cutting out a divisor (s-powers included)."""
    form = BinaryForm.one(p)
    extra_degree = 0
    for place, mult in div:
        if place.is_infinity:
            extra_degree += mult
        else:
            form = form * BinaryForm(p, place.coeffs) ** mult
    if extra_degree:
        form = BinaryForm.from_affine(p, form.affine(), form.degree + extra_degree)
    return form


def bf_arith(f: BinaryForm, g, op: str):
    """Dispatch entry point mirroring the module contract."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "pow":
        return f ** int(g)
    if op == "scalar-mul":
        return f.scalar_mul(int(g))
    if op == "eval-at-rational-point":
        return f.eval_infinity() if g == "inf" else f.eval_affine(int(g))
    raise ValueError(f"unknown form op {op!r}")
