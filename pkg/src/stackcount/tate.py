"""Kodaira fiber classification of minimal Weierstrass models over F_p(t).

A height-n model y^2 = x^3 + a4 x + a6 has a4, a6 binary forms of degrees
4n, 6n (either may vanish identically, not both) with discriminant
Delta = -16 (4 a4^3 + 27 a6^2) not identically zero, and
j = 6912 a4^3 / (4 a4^3 + 27 a6^2) as a fraction of forms.  These are the
standard normalizations away from characteristic 2 and 3; only valuations
and vanishing loci matter downstream, the constants are fixed for
reproducibility.

At a place where the model is minimal, the fiber type is driven by
m = min(3 nu(a4), 2 nu(a6)): m = 0 and nu(Delta) > 0 is multiplicative
(I_k, k = nu(Delta)); positive m picks the additive row of the
vanishing-order table, with the m = 6 row split by nu(Delta) into I_0*
(nu(Delta) = 6) and I_k* (k = nu(Delta) - 6, the pole order of j).
"""

from __future__ import annotations

from dataclasses import dataclass

from .binform import BinaryForm, Place, factor_divisor, valuation
from .ffield import DegenerateInputError
from .wls import TwistDatum, WeightedLinearSeries, WeightVector, twist_of_multiplicity


@dataclass(frozen=True)
class KodairaType:
    """One of I_k (k >= 0), II, III, IV, I_k* (k >= 0), IV*, III*, II*."""

    family: str  # "I", "II", "III", "IV", "I*", "IV*", "III*", "II*"
    k: int | None = None

    def __post_init__(self):
        if self.family in ("I", "I*"):
            if self.k is None or self.k < 0:
                raise ValueError(f"family {self.family} needs an index k >= 0")
        elif self.k is not None:
            raise ValueError(f"family {self.family} carries no index")

    @property
    def label(self) -> str:
        if self.family == "I":
            return f"I_{self.k}"
        if self.family == "I*":
            return f"I_{self.k}*"
        return self.family

    @property
    def is_additive(self) -> bool:
        return not (self.family == "I")

    @property
    def is_good(self) -> bool:
        return self.family == "I" and self.k == 0

    def __str__(self) -> str:
        return self.label


def FORCED_DELTA_VALUATION(kt: KodairaType) -> int:
    """The discriminant valuation forced by each fiber type."""
    if kt.family == "I":
        return kt.k
    if kt.family == "I*":
        return 6 + kt.k
    return {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}[kt.family]


@dataclass(frozen=True)
class FiberReport:
    place: Place
    nu_a4: int | None  # None when a4 is identically zero
    nu_a6: int | None
    nu_delta: int
    j_class: str  # "0" | "1728" | "inf" | "other"
    kodaira: KodairaType
    twist: TwistDatum | None

    def to_json(self):
        out = {
            "place": self.place.to_json(),
            "nu": [self.nu_a4, self.nu_a6, self.nu_delta],
            "j": self.j_class,
            "type": self.kodaira.label,
        }
        if self.kodaira.family in ("I", "I*"):
            out["k"] = self.kodaira.k
        if self.twist is not None:
            out["twist"] = [self.twist.r, self.twist.a]
        return out


class WeierstrassModel:
    """Short Weierstrass data of height n over F_p, p > 3."""

    __slots__ = ("a4", "a6", "n", "p", "_delta")

    def __init__(self, a4: BinaryForm, a6: BinaryForm, n: int):
        if a4.p != a6.p:
            raise ValueError("mixed characteristic")
        if a4.p <= 3:
            raise ValueError("characteristic must exceed 3")
        if a4.is_zero and a6.is_zero:
            raise ValueError("a4 and a6 cannot both vanish")
        if not a4.is_zero and a4.degree != 4 * n:
            raise ValueError(f"a4 must have degree {4 * n}")
        if not a6.is_zero and a6.degree != 6 * n:
            raise ValueError(f"a6 must have degree {6 * n}")
        self.a4 = a4
        self.a6 = a6
        self.n = n
        self.p = a4.p
        delta = (a4**3).scalar_mul(4) + (a6**2).scalar_mul(27)
        if delta.is_zero:
            raise DegenerateInputError(
                "generically singular: the discriminant vanishes identically"
            )
        self._delta = delta.scalar_mul(-16)

    @property
    def series(self) -> WeightedLinearSeries:
        return WeightedLinearSeries(WeightVector.of(4, 6), self.n, (self.a4, self.a6))

    def to_json(self):
        return {
            "p": self.p,
            "n": self.n,
            "a4": self.a4.to_json(),
            "a6": self.a6.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> "WeierstrassModel":
        p = int(obj["p"])
        n = int(obj["n"])
        return cls(
            BinaryForm.from_json(p, obj.get("a4")),
            BinaryForm.from_json(p, obj.get("a6")),
            n,
        )


def discriminant_j(model: WeierstrassModel) -> tuple[BinaryForm, BinaryForm, BinaryForm]:
    """(Delta, j numerator, j denominator); Delta has degree 12 n."""
    delta = model._delta
    j_num = (model.a4**3).scalar_mul(6912)
    j_den = delta.scalar_mul(pow(-16, model.p - 2, model.p))
    return delta, j_num, j_den


def _j_class_at(model: WeierstrassModel, nu4: int | None, nu6: int | None, nu_delta: int) -> str:
    # Compare valuations of 6912 a4^3 and 4 a4^3 + 27 a6^2 at the place.
    jn = 3 * nu4 if nu4 is not None else None
    if jn is None or jn > nu_delta:
        return "0"
    if jn < nu_delta:
        return "inf"
    j1728 = 2 * nu6 if nu6 is not None else None  # valuation of j - 1728 numerator
    if j1728 is None or j1728 > nu_delta:
        return "1728"
    return "other"


_ADDITIVE_TABLE = {
    2: KodairaType("II"),
    3: KodairaType("III"),
    4: KodairaType("IV"),
    8: KodairaType("IV*"),
    9: KodairaType("III*"),
    10: KodairaType("II*"),
}

_TABLE_J = {"II": "0", "III": "1728", "IV": "0", "IV*": "0", "III*": "1728", "II*": "0"}


def classify_place(model: WeierstrassModel, place: Place) -> FiberReport:
    """Fiber type at one place; the model must be minimal there (m < 12)."""
    nu4 = None if model.a4.is_zero else valuation(model.a4, place)
    nu6 = None if model.a6.is_zero else valuation(model.a6, place)
    nu_delta = valuation(model._delta, place)
    candidates = []
    if nu4 is not None:
        candidates.append(3 * nu4)
    if nu6 is not None:
        candidates.append(2 * nu6)
    m = min(candidates)
    if m >= 12:
        raise DegenerateInputError(
            f"model is not minimal at {place!r} (normalized multiplicity {m}); "
            "minimalize it first"
        )
    j_class = _j_class_at(model, nu4, nu6, nu_delta)

    if nu_delta == 0:
        return FiberReport(place, nu4, nu6, 0, j_class, KodairaType("I", 0), None)
    if nu4 == 0:
        # multiplicative: a4 is a unit at the place, j has a pole
        return FiberReport(place, nu4, nu6, nu_delta, j_class,
                           KodairaType("I", nu_delta), None)
    twist = twist_of_multiplicity(m, 12)
    if m == 6:
        if nu_delta > 6:
            kt = KodairaType("I*", nu_delta - 6)
        else:
            kt = KodairaType("I*", 0)
    else:
        kt = _ADDITIVE_TABLE[m]
        if j_class != _TABLE_J[kt.family]:
            raise AssertionError(
                f"j-class {j_class} contradicts the table row for {kt.label}"
            )
    if FORCED_DELTA_VALUATION(kt) != nu_delta:
        raise AssertionError(
            f"nu(Delta)={nu_delta} contradicts the forced value for {kt.label}"
        )
    return FiberReport(place, nu4, nu6, nu_delta, j_class, kt, twist)


@dataclass(frozen=True)
class ClassificationSummary:
    height: int
    nu_delta_total: int
    gamma: tuple[tuple[int, int], ...]
    semistable: bool

    def to_json(self):
        return {
            "height": self.height,
            "nu_delta_total": self.nu_delta_total,
            "expected_total": 12 * self.height,
            "gamma": [list(g) for g in self.gamma],
            "semistable": self.semistable,
        }


def classify_all(
    model: WeierstrassModel, seed: int = 0
) -> tuple[list[FiberReport], ClassificationSummary]:
    """Classify every place dividing the discriminant of a minimal model."""
    from .wls import minimality_defect

    if minimality_defect(model.series, seed):
        raise DegenerateInputError("model is not globally minimal; minimalize it first")
    delta_div = factor_divisor(model._delta, seed)
    reports = [classify_place(model, place) for place, _ in delta_div]
    total = sum(m * place.deg for place, m in delta_div)
    if total != 12 * model.n:
        raise AssertionError(
            f"sum of nu(Delta) deg = {total}, expected {12 * model.n}"
        )
    gamma = tuple(sorted(r.twist.as_pair() for r in reports if r.twist is not None))
    return reports, ClassificationSummary(
        height=model.n,
        nu_delta_total=total,
        gamma=gamma,
        semistable=not gamma,
    )
