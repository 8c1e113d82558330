"""Weighted linear series on P^1 over F_p.

A series of height n for weights (lambda_0, ..., lambda_N) is a tuple of
binary forms, the j-th of degree lambda_j * n or identically zero (never all
zero).  The normalized base divisor records, at each place x, the multiplicity
m_x = min_j cofactor_j * nu_x(f_j) where cofactor_j = kappa / lambda_j and
kappa is the lcm of the weights.  The series is minimal when every m_x < kappa;
the defect counts how far it fails, and dividing out the excess produces the
unique minimal model of lower height.

Each base multiplicity 0 < m < kappa corresponds to a twisting datum
(r, a) = (kappa, m)/gcd(m, kappa), and the height decomposes exactly as
ht = ht_stable + sum over base places of (a/r) * deg(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .binform import (
    BinaryForm,
    Divisor,
    Place,
    bf_gcd,
    divisor_form,
    factor_divisor,
    poly_quo,
)
from .ffield import DegenerateInputError


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[int, ...]

    def __post_init__(self):
        if not self.weights or any(w < 1 for w in self.weights):
            raise ValueError("weights must be a non-empty tuple of positive integers")

    @classmethod
    def of(cls, *weights: int) -> "WeightVector":
        return cls(tuple(int(w) for w in weights))

    @property
    def kappa(self) -> int:
        return lcm(*self.weights)

    @property
    def cofactors(self) -> tuple[int, ...]:
        k = self.kappa
        return tuple(k // w for w in self.weights)

    @property
    def total(self) -> int:
        return sum(self.weights)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)


@dataclass(frozen=True)
class TwistDatum:
    """Local twisting datum (r, a): stabilizer order and character exponent."""

    r: int
    a: int

    def __post_init__(self):
        if self.r == 1 and self.a == 0:
            return
        if not (0 < self.a < self.r and gcd(self.r, self.a) == 1):
            raise ValueError(f"invalid twist datum ({self.r}, {self.a})")

    @classmethod
    def identity(cls) -> "TwistDatum":
        return cls(1, 0)

    @property
    def is_identity(self) -> bool:
        return self.r == 1

    @property
    def delta(self) -> Fraction:
        """Height contribution per residue degree."""
        return Fraction(self.a, self.r)

    def as_pair(self) -> tuple[int, int]:
        return (self.r, self.a)


def twist_of_multiplicity(m: int, kappa: int) -> TwistDatum:
    """Normalized base multiplicity -> twisting datum: (kappa, m)/gcd(m, kappa)."""
    if not 0 < m < kappa:
        raise DegenerateInputError(
            f"multiplicity {m} outside (0, {kappa}); non-minimal or empty condition"
        )
    g = gcd(m, kappa)
    return TwistDatum(kappa // g, m // g)


def multiplicity_of_twist(twist: TwistDatum, kappa: int) -> int:
    """Inverse dictionary: m = kappa * a / r."""
    if twist.is_identity:
        raise DegenerateInputError("identity twist carries no base multiplicity")
    if kappa % twist.r != 0:
        raise ValueError(f"r={twist.r} does not divide kappa={kappa}")
    return kappa * twist.a // twist.r


@dataclass(frozen=True)
class VanishingCondition:
    """Single-place vanishing condition on a pair of forms.

    Each coordinate is either exact ("orders equal") or a lower bound
    ("orders at least"); at least one coordinate must be exact for the
    condition to pin down a base multiplicity.
    """

    a: int
    b: int
    a_exact: bool
    b_exact: bool

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("vanishing orders must be positive")
        if not (self.a_exact or self.b_exact):
            raise ValueError("at least one coordinate must be an exact order")

    @property
    def shape(self) -> str:
        if self.a_exact and self.b_exact:
            return "exact_exact"
        return "exact_geq" if self.a_exact else "geq_exact"

    @classmethod
    def parse(cls, text: str) -> "VanishingCondition":
        """Parse the "(>=a,b)" notation, e.g. ">=1,1", "1,>=2", "2,3"."""
        parts = text.replace("(", "").replace(")", "").replace("≥", ">=").split(",")
        if len(parts) != 2:
            raise ValueError(f"cannot parse vanishing condition {text!r}")

        def one(part: str) -> tuple[int, bool]:
            part = part.strip()
            if part.startswith(">="):
                return int(part[2:]), False
            return int(part), True

        a, a_exact = one(parts[0])
        b, b_exact = one(parts[1])
        return cls(a, b, a_exact, b_exact)

    def __str__(self) -> str:
        left = f"{self.a}" if self.a_exact else f">={self.a}"
        right = f"{self.b}" if self.b_exact else f">={self.b}"
        return f"{left},{right}"

    def multiplicity(self, lam0: int, lam1: int) -> int:
        k = lcm(lam0, lam1)
        return min(k // lam0 * self.a, k // lam1 * self.b)

    def realizable(self, lam0: int, lam1: int, n: int) -> bool:
        """True when the condition cuts a nonempty stratum of minimal series.

        Needs the orders to fit the degrees, the induced base multiplicity to
        stay below kappa, and the minimum to be achieved at an exact
        coordinate (otherwise the locus mixes several multiplicities).
        """
        if self.a > lam0 * n or self.b > lam1 * n:
            return False
        k = lcm(lam0, lam1)
        m0 = k // lam0 * self.a
        m1 = k // lam1 * self.b
        m = min(m0, m1)
        if m >= k:
            return False
        return (self.a_exact and m0 == m) or (self.b_exact and m1 == m)

    def require_realizable(self, lam0: int, lam1: int, n: int) -> None:
        if not self.realizable(lam0, lam1, n):
            raise DegenerateInputError(
                f"vanishing condition ({self}) is not realizable for weights "
                f"({lam0},{lam1}) at height {n}"
            )

    def matches(self, v0: int | None, v1: int | None) -> bool:
        """Test actual orders (None = infinite, for the zero form)."""

        def check(v: int | None, bound: int, exact: bool) -> bool:
            if v is None:
                return not exact
            return v == bound if exact else v >= bound

        return check(v0, self.a, self.a_exact) and check(v1, self.b, self.b_exact)


class WeightedLinearSeries:
    """Tuple of binary forms of degrees lambda_j * n over a common F_p."""

    __slots__ = ("weights", "n", "forms", "p")

    def __init__(self, weights: WeightVector, n: int, forms):
        forms = tuple(forms)
        if len(forms) != len(weights):
            raise ValueError("one form per weight required")
        if n < 0:
            raise ValueError("height must be non-negative")
        ps = {f.p for f in forms}
        if len(ps) != 1:
            raise ValueError("forms must share one prime field")
        if all(f.is_zero for f in forms):
            raise ValueError("the all-zero series is excluded")
        for w, f in zip(weights, forms):
            if not f.is_zero and f.degree != w * n:
                raise ValueError(
                    f"form for weight {w} must have degree {w * n}, got {f.degree}"
                )
        self.weights = weights
        self.n = n
        self.forms = forms
        self.p = ps.pop()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeightedLinearSeries)
            and self.weights == other.weights
            and self.n == other.n
            and self.forms == other.forms
        )

    def __hash__(self) -> int:
        return hash((self.weights, self.n, self.forms))

    def __repr__(self) -> str:
        return (
            f"WeightedLinearSeries(weights={self.weights.weights}, n={self.n}, "
            f"p={self.p}, forms={[list(f.coeffs) for f in self.forms]})"
        )

    def to_json(self):
        return {
            "p": self.p,
            "weights": list(self.weights.weights),
            "n": self.n,
            "forms": [f.to_json() for f in self.forms],
        }

    @classmethod
    def from_json(cls, obj) -> "WeightedLinearSeries":
        p = int(obj["p"])
        weights = WeightVector(tuple(int(w) for w in obj["weights"]))
        n = int(obj["n"])
        forms = [BinaryForm.from_json(p, fo) for fo in obj["forms"]]
        return cls(weights, n, forms)


def normalized_base_divisor(series: WeightedLinearSeries, seed: int = 0) -> Divisor:
    """Divisor of the common zeros of the normalized powers f_j^(kappa/lambda_j).

    Its multiplicity at x is m_x = min_j cofactor_j * nu_x(f_j); zero forms are
    skipped (infinite valuation never achieves the minimum).
    """
    acc: BinaryForm | None = None
    for cof, form in zip(series.weights.cofactors, series.forms):
        if form.is_zero:
            continue
        powered = form**cof
        acc = powered if acc is None else bf_gcd(acc, powered)
        if not acc.is_zero and acc.degree == 0:
            return Divisor.empty()
    assert acc is not None
    if acc.degree == 0:
        return Divisor.empty()
    return factor_divisor(acc, seed)


def minimality_defect(series: WeightedLinearSeries, seed: int = 0) -> int:
    """Total degree of the kappa-quotient of the normalized base divisor."""
    kappa = series.weights.kappa
    return sum(
        (m // kappa) * place.deg
        for place, m in normalized_base_divisor(series, seed)
    )


def _bf_exact_div(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    if f.is_zero:
        return f
    target = f.degree - g.degree
    quo = poly_quo(f.affine(), g.affine(), f.p)
    return BinaryForm.from_affine(f.p, quo, target)


def minimalize(
    series: WeightedLinearSeries, seed: int = 0
) -> tuple[WeightedLinearSeries, BinaryForm]:
    """Divide out the defect: f_j = f'_j * h^(lambda_j) with h of degree e.

    Returns the unique minimal model of height n - e together with h; the
    identity (h = 1) when the series is already minimal.
    """
    kappa = series.weights.kappa
    base = normalized_base_divisor(series, seed)
    excess = Divisor.of((pl, m // kappa) for pl, m in base if m >= kappa)
    if not len(excess):
        return series, BinaryForm.one(series.p)
    h = divisor_form(excess, series.p)
    e = excess.degree
    new_forms = [
        _bf_exact_div(f, h**w) for w, f in zip(series.weights, series.forms)
    ]
    minimal = WeightedLinearSeries(series.weights, series.n - e, new_forms)
    return minimal, h


def unminimalize(
    series: WeightedLinearSeries, h: BinaryForm
) -> WeightedLinearSeries:
    """Inverse of minimalize: multiply by h^(lambda_j), raising the height."""
    if h.is_zero:
        raise DegenerateInputError("h must be nonzero")
    e = h.degree
    forms = [f * h**w for w, f in zip(series.weights, series.forms)]
    return WeightedLinearSeries(series.weights, series.n + e, forms)


@dataclass(frozen=True)
class LocalDatum:
    place: Place
    m: int
    twist: TwistDatum
    delta: Fraction

    def to_json(self):
        return {
            "place": self.place.to_json(),
            "m": self.m,
            "r": self.twist.r,
            "a": self.twist.a,
            "delta": f"{self.delta.numerator}/{self.delta.denominator}",
        }


@dataclass(frozen=True)
class HeightReport:
    ht: int
    ht_stable: Fraction
    locals: tuple[LocalDatum, ...]
    isotrivial: bool

    @property
    def gamma_multiset(self) -> tuple[tuple[int, int], ...]:
        """Canonically sorted multiset of twisting data."""
        return tuple(sorted(ld.twist.as_pair() for ld in self.locals))

    def to_json(self):
        return {
            "ht": self.ht,
            "ht_stable": f"{self.ht_stable.numerator}/{self.ht_stable.denominator}",
            "locals": [ld.to_json() for ld in self.locals],
            "isotrivial": self.isotrivial,
        }


def height_report(
    series: WeightedLinearSeries, require_minimal: bool = False, seed: int = 0
) -> HeightReport:
    """Height decomposition ht = ht_stable + sum of local (a/r) * deg terms.

    Non-minimal input is rejected when require_minimal is set (naming the
    offending places); otherwise the unique minimal model is computed first
    and the report describes it.
    """
    kappa = series.weights.kappa
    base = normalized_base_divisor(series, seed)
    offenders = [pl for pl, m in base if m >= kappa]
    if offenders:
        if require_minimal:
            raise DegenerateInputError(
                "series is not minimal at "
                + ", ".join(repr(pl) for pl in offenders)
            )
        series, _ = minimalize(series, seed)
        base = normalized_base_divisor(series, seed)
    locals_ = []
    for place, m in base:
        twist = twist_of_multiplicity(m, kappa)
        locals_.append(LocalDatum(place, m, twist, twist.delta * place.deg))
    ht = series.n
    ht_stable = Fraction(ht) - sum((ld.delta for ld in locals_), Fraction(0))
    return HeightReport(ht, ht_stable, tuple(locals_), ht_stable == 0)


def equivalent(w1: WeightedLinearSeries, w2: WeightedLinearSeries) -> bool:
    """Same rational point: f'_j = u^(lambda_j) f_j for some unit u."""
    if w1.weights != w2.weights or w1.n != w2.n or w1.p != w2.p:
        raise ValueError("series must share weights, height and field")
    p = w1.p
    for u in range(1, p):
        if all(
            f2 == f1.scalar_mul(pow(u, lam, p))
            for lam, f1, f2 in zip(w1.weights, w1.forms, w2.forms)
        ):
            return True
    return False


def canonical_representative(series: WeightedLinearSeries) -> WeightedLinearSeries:
    """Lexicographically least coefficient tuple over the p-1 unit scalings."""
    p = series.p
    best = None
    best_key = None
    for u in range(1, p):
        forms = [
            f.scalar_mul(pow(u, lam, p))
            for lam, f in zip(series.weights, series.forms)
        ]
        key = tuple(f.coeffs for f in forms)
        if best_key is None or key < best_key:
            best_key = key
            best = forms
    return WeightedLinearSeries(series.weights, series.n, best)
