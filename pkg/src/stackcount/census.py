"""Brute-force oracles over small F_p and the curve-counting functions.

Every closed-form count in the motive module has an exhaustive counterpart
here: minimal-series censuses (raw, weighted and Burnside-orbit counts),
coprime-pair counts with vanishing conditions, and single-base-point stratum
sweeps.  count_curves evaluates the discriminant-height counting functions
both by term-by-term summation of specialized motives and by the closed
forms, and verify() runs the full formula-vs-oracle suite.

Enumerations partition the coefficient space into disjoint lexicographic
index ranges; workers are pure over their ranges and results merge by
addition, so counts and checksums are bit-identical under any scheduling.
"""

from __future__ import annotations

import multiprocessing
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .binform import (
    BinaryForm,
    monic_irreducibles,
    poly_factor,
    poly_gcd,
    poly_trim,
    poly_valuation,
)
from .ffield import DegenerateInputError, is_prime, units_by_order
from .motive import (
    inertia_wmin_motive,
    poly1_motive,
    poly_cond_motive,
    stratum_gamma_motive,
    wmin_motive,
)
from .wls import VanishingCondition, WeightVector

DEFAULT_BUDGET = 10_000_000
_POLY_BRUTE_LIMIT = 200_000
_CHECKSUM_MOD = (1 << 61) - 1


class BudgetExceededError(RuntimeError):
    """Enumeration space exceeds the configured budget; pass force to run."""


def _hash_index(i: int) -> int:
    return (i * 0x9E3779B97F4A7C15 + 0xDA942042E4DD58B5) % _CHECKSUM_MOD


@dataclass(frozen=True)
class CensusConfig:
    p: int
    weights: tuple[int, ...]
    n: int
    gamma: VanishingCondition | None = None
    workers: int = 1
    chunk_size: int = 1 << 16
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    force: bool = False

    @property
    def space_size(self) -> int:
        return self.p ** sum(w * self.n + 1 for w in self.weights)

    @property
    def heavy(self) -> bool:
        return self.space_size > self.budget


@dataclass(frozen=True)
class CensusResult:
    raw: int
    weighted: Fraction
    orbits: int
    seconds: float
    checksum: int

    def to_json(self):
        return {
            "raw": self.raw,
            "weighted": str(self.weighted),
            "orbits": self.orbits,
            "seconds": round(self.seconds, 3),
            "checksum": self.checksum,
        }


@dataclass(frozen=True)
class StratumResult:
    raw_fiber: int
    weighted: Fraction
    seconds: float
    checksum: int

    def to_json(self):
        return {
            "raw_fiber": self.raw_fiber,
            "weighted": str(self.weighted),
            "seconds": round(self.seconds, 3),
            "checksum": self.checksum,
        }


# ---------------------------------------------------------------------------
# Minimal-series census
# ---------------------------------------------------------------------------


def _form_table(p: int, n_coeffs: int) -> list[tuple[tuple[int, ...], int] | None]:
    """Per-form lookup: sub-index -> (trimmed affine poly, nu_infinity), None if zero."""
    out: list[tuple[tuple[int, ...], int] | None] = []
    coeffs = [0] * n_coeffs
    for _ in range(p**n_coeffs):
        aff = poly_trim(coeffs)
        out.append((aff, n_coeffs - len(aff)) if aff else None)
        for pos in range(n_coeffs):
            coeffs[pos] += 1
            if coeffs[pos] < p:
                break
            coeffs[pos] = 0
    return out


def _tuple_is_minimal(parts, cofs, kappa, p) -> bool:
    """Minimality of a not-all-zero tuple; parts pairs (affine, nu_inf).

    Plain gcd first with early exits; candidate places are factored only when
    the forms share a nonconstant gcd (the cold path).
    """
    m_inf = min(c * nu for c, (_, nu) in zip(cofs, parts))
    if m_inf >= kappa:
        return False
    g = parts[0][0]
    for aff, _ in parts[1:]:
        g = poly_gcd(g, aff, p)
        if len(g) == 1:
            return True
    if len(g) == 1:
        return True
    for irr, _ in poly_factor(g, p, 0):
        m = min(c * poly_valuation(aff, irr, p) for c, (aff, _) in zip(cofs, parts))
        if m >= kappa:
            return False
    return True


def _wmin_range_worker(args) -> tuple[int, int]:
    p, weights, n, start, stop = args
    wv = WeightVector(weights)
    kappa = wv.kappa
    cof = wv.cofactors
    sizes = [w * n + 1 for w in weights]
    tables = [_form_table(p, k) for k in sizes]
    spaces = [p**k for k in sizes]
    raw = 0
    checksum = 0
    for idx in range(start, stop):
        rem = idx
        parts = []
        cofs_nz = []
        for j, (space, table) in enumerate(zip(spaces, tables)):
            rem, sub = divmod(rem, space)
            entry = table[sub]
            if entry is not None:
                parts.append(entry)
                cofs_nz.append(cof[j])
        if not parts:
            continue
        if _tuple_is_minimal(parts, cofs_nz, kappa, p):
            raw += 1
            checksum = (checksum + _hash_index(idx)) % _CHECKSUM_MOD
    return raw, checksum


_RAW_CACHE: dict[tuple[int, tuple[int, ...], int], int] = {}


def _raw_minimal_count(p: int, weights: tuple[int, ...], n: int, workers: int, chunk: int) -> tuple[int, int]:
    key = (p, weights, n)
    total = p ** sum(w * n + 1 for w in weights)
    ranges = [
        (p, weights, n, s, min(s + chunk, total)) for s in range(0, total, chunk)
    ]
    if workers > 1 and len(ranges) > 1:
        with multiprocessing.Pool(workers) as pool:
            results = pool.map(_wmin_range_worker, ranges)
    else:
        results = [_wmin_range_worker(r) for r in ranges]
    raw = sum(r for r, _ in results)
    checksum = sum(c for _, c in results) % _CHECKSUM_MOD
    _RAW_CACHE[key] = raw
    return raw, checksum


def enumerate_wmin(
    weights,
    n: int,
    p: int,
    workers: int = 1,
    chunk_size: int = 1 << 16,
    budget: int = DEFAULT_BUDGET,
    force: bool = False,
) -> CensusResult:
    """Exhaustive census of minimal weighted linear series of height n.

    raw counts qualifying coefficient tuples, weighted divides by the p-1
    scalings, and orbits applies Burnside to the weighted scaling action
    (a unit u fixes exactly the tuples supported on weights divisible by
    ord(u), so each fixed-point count is a sub-weight census).
    """
    weights = tuple(weights)
    cfg = CensusConfig(p, weights, n, workers=workers, chunk_size=chunk_size,
                       budget=budget, force=force)
    if cfg.heavy and not force:
        raise BudgetExceededError(
            f"space of {cfg.space_size} tuples exceeds budget {budget}"
        )
    t0 = time.perf_counter()
    raw, checksum = _raw_minimal_count(p, weights, n, workers, chunk_size)
    fixed_total = 0
    for d, count in units_by_order(p).items():
        sub = tuple(w for w in weights if w % d == 0)
        if not sub:
            continue
        if sub == weights:
            fixed_total += count * raw
            continue
        key = (p, sub, n)
        if key not in _RAW_CACHE:
            _raw_minimal_count(p, sub, n, workers, chunk_size)
        fixed_total += count * _RAW_CACHE[key]
    if fixed_total % (p - 1):
        raise AssertionError("Burnside sum not divisible by the unit count")
    return CensusResult(
        raw=raw,
        weighted=Fraction(raw, p - 1),
        orbits=fixed_total // (p - 1),
        seconds=time.perf_counter() - t0,
        checksum=checksum,
    )


def orbit_count_by_dedup(weights, n: int, p: int) -> int:
    """Independent orbit count: canonical-representative deduplication.

    Only feasible for small spaces; used to cross-check the Burnside path.
    """
    weights = tuple(weights)
    wv = WeightVector(weights)
    kappa = wv.kappa
    cof = wv.cofactors
    sizes = [w * n + 1 for w in weights]
    tables = [_form_table(p, k) for k in sizes]
    spaces = [p**k for k in sizes]
    total = p ** sum(sizes)
    powers = {u: [pow(u, w, p) for w in weights] for u in range(1, p)}
    reps: set[tuple] = set()
    coeff_vectors: list[list[tuple[int, ...]]] = []
    for k in sizes:
        vecs = []
        coeffs = [0] * k
        for _ in range(p**k):
            vecs.append(tuple(coeffs))
            for pos in range(k):
                coeffs[pos] += 1
                if coeffs[pos] < p:
                    break
                coeffs[pos] = 0
        coeff_vectors.append(vecs)
    for idx in range(total):
        rem = idx
        subs = []
        parts = []
        cofs_nz = []
        for j, space in enumerate(spaces):
            rem, sub = divmod(rem, space)
            subs.append(sub)
            entry = tables[j][sub]
            if entry is not None:
                parts.append(entry)
                cofs_nz.append(cof[j])
        if not parts:
            continue
        if not _tuple_is_minimal(parts, cofs_nz, kappa, p):
            continue
        forms = [coeff_vectors[j][s] for j, s in enumerate(subs)]
        best = None
        for u in range(1, p):
            scaled = tuple(
                tuple(c * powers[u][j] % p for c in forms[j])
                for j in range(len(forms))
            )
            if best is None or scaled < best:
                best = scaled
        reps.add(best)
    return len(reps)


# ---------------------------------------------------------------------------
# Poly-space census (coprime monic pairs with vanishing conditions)
# ---------------------------------------------------------------------------


def _monic_polys(p: int, degree: int, nonzero_constant: bool = False):
    """Yield monic ascending coefficient tuples of the exact degree."""
    if degree == 0:
        yield (1,)
        return
    lows = [0] * degree
    first_range = range(1, p) if nonzero_constant else range(p)
    for c0 in first_range:
        lows[0] = c0
        for _ in range(p ** (degree - 1)):
            yield tuple(lows) + (1,)
            for pos in range(1, degree):
                lows[pos] += 1
                if lows[pos] < p:
                    break
                lows[pos] = 0
            else:
                if degree == 1:
                    break


def _shape_exactness(shape: str | None) -> tuple[bool, bool]:
    if shape == "geq_exact":
        return False, True
    if shape == "exact_geq":
        return True, False
    if shape == "exact_exact":
        return True, True
    raise ValueError(f"unknown condition shape {shape!r}")


_FACTOR_DEG_CACHE: dict[tuple[int, tuple[int, ...]], tuple[int, ...]] = {}


def _distinct_factor_degrees(u: tuple[int, ...], p: int) -> tuple[int, ...]:
    key = (p, u)
    got = _FACTOR_DEG_CACHE.get(key)
    if got is None:
        got = tuple(len(f) - 1 for f, _ in poly_factor(u, p, 0))
        _FACTOR_DEG_CACHE[key] = got
    return got


def _subset_degree_sums(degs: tuple[int, ...]) -> list[tuple[int, int]]:
    """(sign, total degree) over all subsets of the factor multiset."""
    out = [(1, 0)]
    for d in degs:
        out += [(-sign, s + d) for sign, s in out]
    return out


def _count_coprime_partners(subsets, m2: int, p: int, nonzero_constant: bool) -> int:
    total = 0
    for sign, s in subsets:
        k = m2 - s
        if k < 0:
            continue
        if nonzero_constant:
            count = 1 if k == 0 else p**k - p ** (k - 1)
        else:
            count = p**k
        total += sign * count
    return total


def enumerate_poly(
    shape: str | None, a: int, b: int, d1: int, d2: int, p: int
) -> int:
    """Count monic pairs of degrees (d1, d2) with the given condition at 0.

    shape None counts plain coprime pairs; otherwise 0 must be the unique
    common root with orders constrained by the shape.  Small spaces run the
    literal pair loop with a gcd test; larger ones enumerate the first side
    and count partners by inclusion-exclusion over its distinct irreducible
    factors (multiples of a degree-k monic among monics of degree d are
    p^(d-k), so both branches are independent of the motive formulas).
    """
    if d1 < 0 or d2 < 0:
        raise ValueError("degrees must be non-negative")
    if shape is not None:
        if a < 1 or b < 1:
            raise ValueError("vanishing orders must be positive")
        if a > d1 or b > d2:
            raise ValueError("vanishing condition exceeds the degree")
    if p ** (d1 + d2) <= _POLY_BRUTE_LIMIT:
        return _enumerate_poly_pairs(shape, a, b, d1, d2, p)
    return _enumerate_poly_ie(shape, a, b, d1, d2, p)


def _nu0(u: tuple[int, ...]) -> int:
    k = 0
    for c in u:
        if c:
            break
        k += 1
    return k


def _enumerate_poly_pairs(shape, a, b, d1, d2, p) -> int:
    a_exact, b_exact = _shape_exactness(shape) if shape else (False, False)
    total = 0
    for f1 in _monic_polys(p, d1):
        v1 = _nu0(f1)
        if shape is not None:
            if (v1 != a) if a_exact else (v1 < a):
                continue
        g1 = f1[v1:]
        for f2 in _monic_polys(p, d2):
            v2 = _nu0(f2)
            if shape is None:
                if len(poly_gcd(f1, f2, p)) == 1:
                    total += 1
                continue
            if (v2 != b) if b_exact else (v2 < b):
                continue
            if len(poly_gcd(g1, f2[v2:], p)) == 1:
                total += 1
    return total


def _enumerate_poly_ie(shape, a, b, d1, d2, p) -> int:
    if shape is None:
        total = 0
        for f1 in _monic_polys(p, d1):
            subsets = _subset_degree_sums(_distinct_factor_degrees(f1, p)) if d1 else [(1, 0)]
            total += _count_coprime_partners(subsets, d2, p, nonzero_constant=False)
        return total
    a_exact, b_exact = _shape_exactness(shape)
    v1_values = [a] if a_exact else range(a, d1 + 1)
    v2_values = [b] if b_exact else range(b, d2 + 1)
    total = 0
    for v1 in v1_values:
        m1 = d1 - v1
        for g1 in _monic_polys(p, m1, nonzero_constant=True):
            degs = _distinct_factor_degrees(g1, p) if m1 else ()
            subsets = _subset_degree_sums(degs)
            for v2 in v2_values:
                total += _count_coprime_partners(subsets, d2 - v2, p, nonzero_constant=True)
    return total


# ---------------------------------------------------------------------------
# Stratum census: one base point of prescribed vanishing type
# ---------------------------------------------------------------------------


def _build_stratum_side(p: int, n_coeffs: int, cap_deg: int, irr_ids: dict, words: int):
    """Vectorized per-form data for one side of the pair space.

    nu: t-adic valuation; inf: vanishes at infinity; mask: bitset of distinct
    irreducible factors of degree <= cap of the form with its t-power
    stripped.  The zero form gets nu = -1 so it never matches a condition: in
    a realizable stratum a zero form cannot occur (its partner would have to
    be a pure monomial of full degree, forcing base multiplicity kappa * n).
    """
    size = p**n_coeffs
    nu = np.zeros(size, dtype=np.int32)
    inf = np.zeros(size, dtype=bool)
    mask = np.zeros((size, words), dtype=np.uint64)
    factor_cache: dict[tuple[int, ...], list[int]] = {}
    coeffs = [0] * n_coeffs
    for idx in range(size):
        aff = poly_trim(coeffs)
        if not aff:
            nu[idx] = -1
            inf[idx] = True
        else:
            v = _nu0(tuple(coeffs))
            nu[idx] = v
            inf[idx] = coeffs[-1] == 0
            core = aff[v:]
            if len(core) > 1:
                bits = factor_cache.get(core)
                if bits is None:
                    bits = [
                        irr_ids[f]
                        for f, _ in poly_factor(core, p, 0)
                        if len(f) - 1 <= cap_deg
                    ]
                    factor_cache[core] = bits
                for bit in bits:
                    mask[idx, bit >> 6] |= np.uint64(1 << (bit & 63))
        for pos in range(n_coeffs):
            coeffs[pos] += 1
            if coeffs[pos] < p:
                break
            coeffs[pos] = 0
    return nu, inf, mask


_STRATUM_CTX: dict | None = None


def _stratum_fiber_range(ctx: dict, start: int, stop: int) -> tuple[int, int]:
    gamma: VanishingCondition = ctx["gamma"]
    nu0, inf0, mask0 = ctx["side0"]
    nu1, inf1, mask1 = ctx["side1"]
    words = mask1.shape[1]
    cond1 = (nu1 == gamma.b) if gamma.b_exact else (nu1 >= gamma.b)
    count = 0
    checksum = 0
    for i in range(start, stop):
        v0 = int(nu0[i])
        if gamma.a_exact:
            if v0 != gamma.a:
                continue
        elif v0 < gamma.a:
            continue
        ok = cond1.copy()
        if inf0[i]:
            ok &= ~inf1
        row = mask0[i]
        if row.any():
            common = mask1[:, 0] & row[0]
            for w in range(1, words):
                common |= mask1[:, w] & row[w]
            ok &= common == 0
        c = int(np.count_nonzero(ok))
        count += c
        checksum = (checksum + _hash_index(i) * (1 + c)) % _CHECKSUM_MOD
    return count, checksum


def _stratum_worker(rng: tuple[int, int]) -> tuple[int, int]:
    assert _STRATUM_CTX is not None
    return _stratum_fiber_range(_STRATUM_CTX, rng[0], rng[1])


def enumerate_stratum(
    lam0: int,
    lam1: int,
    n: int,
    gamma: VanishingCondition,
    p: int,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
    force: bool = False,
) -> StratumResult:
    """Sweep the fiber over t = 0 of the single-base-point stratum.

    Counts pairs (f0, f1) of degrees (lam0*n, lam1*n) whose only common zero
    is t = 0 with vanishing orders matching gamma; the stratum fibers over
    the p + 1 rational positions of the base point, so its weighted count is
    (p + 1) * raw_fiber / (p - 1).
    """
    global _STRATUM_CTX
    gamma.require_realizable(lam0, lam1, n)
    k0, k1 = lam0 * n + 1, lam1 * n + 1
    space = p ** (k0 + k1)
    if space > budget and not force:
        raise BudgetExceededError(
            f"space of {space} tuples exceeds budget {budget}"
        )
    t0 = time.perf_counter()
    cap = min(lam0, lam1) * n
    irr_list = monic_irreducibles(p, cap)
    irr_ids = {f: i for i, f in enumerate(irr_list)}
    words = (len(irr_list) + 63) // 64
    side0 = _build_stratum_side(p, k0, cap, irr_ids, words)
    side1 = _build_stratum_side(p, k1, cap, irr_ids, words)
    ctx = {"gamma": gamma, "side0": side0, "side1": side1}
    total0 = p**k0
    chunk = max(1, total0 // (workers * 8)) if workers > 1 else total0
    ranges = [(s, min(s + chunk, total0)) for s in range(0, total0, chunk)]
    if workers > 1 and len(ranges) > 1 and hasattr(os, "fork"):
        _STRATUM_CTX = ctx
        try:
            with multiprocessing.get_context("fork").Pool(workers) as pool:
                results = pool.map(_stratum_worker, ranges)
        finally:
            _STRATUM_CTX = None
    else:
        results = [_stratum_fiber_range(ctx, s, e) for s, e in ranges]
    raw = sum(r for r, _ in results)
    checksum = sum(c for _, c in results) % _CHECKSUM_MOD
    return StratumResult(
        raw_fiber=raw,
        weighted=Fraction((p + 1) * raw, p - 1),
        seconds=time.perf_counter() - t0,
        checksum=checksum,
    )


# ---------------------------------------------------------------------------
# Counting functions ordered by discriminant height
# ---------------------------------------------------------------------------

THETA_GAMMAS: dict[str, str] = {
    "II": ">=1,1",
    "III": "1,>=2",
    "IV": ">=2,2",
    "I0*-generic": "2,3",  # also covers I_k* (k > 0) at j = infinity
    "Ik*": "2,3",
    "I0*-j0": ">=3,3",
    "I0*-j1728": "2,>=4",
    "IV*": ">=3,4",
    "III*": "3,>=5",
    "II*": ">=4,5",
}


def _is_odd_prime_power(q: int) -> bool:
    if q < 5:
        return False
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p) or p <= 3:
                return False
            while q % p == 0:
                q //= p
            return q == 1
    return False


@dataclass(frozen=True)
class CountReport:
    mode: str
    q: int
    m: int
    theta: str | None
    value_sum: Fraction
    value_closed: Fraction | None
    closed_applicable: bool
    match: bool | None
    breakdown: dict = field(default_factory=dict)

    def to_json(self):
        def frac(x):
            return None if x is None else str(x)

        return {
            "mode": self.mode,
            "q": self.q,
            "B": f"{self.q}^{12 * self.m}",
            "theta": self.theta,
            "value_sum": frac(self.value_sum),
            "value_closed": frac(self.value_closed),
            "closed_applicable": self.closed_applicable,
            "match": self.match,
            "breakdown": self.breakdown,
        }


def count_constants(q: int) -> dict[str, Fraction]:
    """The leading-coefficient rational functions of the total counts."""
    d6 = Fraction(1 if (q - 1) % 6 == 0 else 0)
    d4 = Fraction(1 if (q - 1) % 4 == 0 else 0)
    return {
        "a_q": Fraction(q**9 - 1, q**8 - q**7),
        "b_q": d6 * Fraction(q**5 - 1, q**5 - q**4),
        "c_q": d4 * Fraction(q**3 - 1, q**3 - q**2),
        "d_q": d6 * 4 + d4 * 2,
        "delta4": d4,
        "delta6": d6,
    }


def count_curves(q: int, m: int, mode: str, theta: str | None = None) -> CountReport:
    """Counting functions at B = q^(12 m), by summation and by closed form.

    weighted/unweighted count all minimal models with ht(Delta) <= B (the
    generically singular locus subtracted); kodaira counts models with a
    single additive fiber of the named type.  The closed forms are exact for
    m >= 1; at m = 0 only the summation applies.
    """
    if not _is_odd_prime_power(q):
        raise ValueError("q must be a prime power with characteristic > 3")
    if m < 0:
        raise ValueError("the height exponent m must be non-negative")
    consts = count_constants(q)
    orders = units_by_order(q)
    b56, b12, b13, b16 = q ** (10 * m), q ** (6 * m), q ** (4 * m), q ** (2 * m)
    breakdown: dict = {"constants": {k: str(v) for k, v in consts.items()}}

    if mode == "weighted":
        terms = [
            wmin_motive((4, 6), n).specialize(q) - wmin_motive((2,), n).specialize(q)
            for n in range(m + 1)
        ]
        value_sum = sum(terms, Fraction(0))
        closed = consts["a_q"] * b56 - b16 if m >= 1 else None
        breakdown["terms"] = [str(t) for t in terms]
    elif mode == "unweighted":
        terms = [
            inertia_wmin_motive((4, 6), n, orders).specialize(q)
            - 2 * wmin_motive((2,), n).specialize(q)
            for n in range(m + 1)
        ]
        value_sum = sum(terms, Fraction(0))
        closed = (
            2 * consts["a_q"] * b56
            - 2 * b16
            + 4 * consts["b_q"] * b12
            + 2 * consts["c_q"] * b13
            + consts["d_q"]
            if m >= 1
            else None
        )
        breakdown["terms"] = [str(t) for t in terms]
    elif mode == "kodaira":
        if theta not in THETA_GAMMAS:
            raise ValueError(
                f"unknown Kodaira type key {theta!r}; expected one of {sorted(THETA_GAMMAS)}"
            )
        gamma = VanishingCondition.parse(THETA_GAMMAS[theta])
        terms = [
            2 * stratum_gamma_motive(4, 6, n, gamma).specialize(q)
            for n in range(1, m + 1)
        ]
        value_sum = sum(terms, Fraction(0))
        if gamma.shape == "exact_exact":
            c_theta = Fraction((q - 1) * q ** (10 - gamma.a - gamma.b - 1))
        else:
            c_theta = Fraction(q ** (10 - gamma.a - gamma.b))
        closed = (
            2 * Fraction(q**2 - 1, q**10 - 1) * c_theta * (b56 - 1)
            if m >= 1
            else None
        )
        breakdown["gamma"] = str(gamma)
        breakdown["terms"] = [str(t) for t in terms]
    else:
        raise ValueError(f"unknown mode {mode!r}")

    return CountReport(
        mode=mode,
        q=q,
        m=m,
        theta=theta,
        value_sum=value_sum,
        value_closed=closed,
        closed_applicable=closed is not None,
        match=None if closed is None else (closed == value_sum),
        breakdown=breakdown,
    )


# ---------------------------------------------------------------------------
# Verification suite
# ---------------------------------------------------------------------------


@dataclass
class VerifyCase:
    case: str
    formula_value: str
    oracle_value: str
    match: bool
    seconds: float

    def to_json(self):
        return {
            "case": self.case,
            "formula_value": self.formula_value,
            "oracle_value": self.oracle_value,
            "match": self.match,
            "seconds": round(self.seconds, 4),
        }


def _timed_case(name: str, formula, oracle) -> VerifyCase:
    t0 = time.perf_counter()
    fv = formula() if callable(formula) else formula
    ov = oracle() if callable(oracle) else oracle
    return VerifyCase(name, str(fv), str(ov), fv == ov, time.perf_counter() - t0)


def _poly_cases(primes=(5, 7, 11, 13), max_deg: int = 4):
    cases = []
    for p in primes:
        for d1 in range(max_deg + 1):
            for d2 in range(max_deg + 1):
                cases.append(
                    _timed_case(
                        f"poly1 d=({d1},{d2}) p={p}",
                        lambda d1=d1, d2=d2, p=p: poly1_motive(d1, d2).specialize(p),
                        lambda d1=d1, d2=d2, p=p: enumerate_poly(None, 0, 0, d1, d2, p),
                    )
                )
                for shape in ("geq_exact", "exact_geq", "exact_exact"):
                    for a in range(1, d1 + 1):
                        for b in range(1, d2 + 1):
                            cases.append(
                                _timed_case(
                                    f"poly {shape} (a,b)=({a},{b}) d=({d1},{d2}) p={p}",
                                    lambda s=shape, a=a, b=b, d1=d1, d2=d2, p=p:
                                        poly_cond_motive(s, a, b, d1, d2).specialize(p),
                                    lambda s=shape, a=a, b=b, d1=d1, d2=d2, p=p:
                                        enumerate_poly(s, a, b, d1, d2, p),
                                )
                            )
    return cases


WMIN_GRID = (
    [((1, 1), n, p) for n in (0, 1, 2) for p in (5, 7)]
    + [((1, 2), n, p) for n in (0, 1) for p in (5, 7)]
    + [((2, 3), n, 5) for n in (0, 1)]
    + [((2, 2), n, p) for n in (0, 1) for p in (5, 7)]
)


def _wmin_cases(workers: int = 1):
    cases = []
    results: dict = {}
    for weights, n, p in WMIN_GRID:
        res = enumerate_wmin(weights, n, p, workers=workers)
        results[(weights, n, p)] = res
        cases.append(
            _timed_case(
                f"wmin weights={weights} n={n} p={p}",
                lambda w=weights, n=n, p=p: wmin_motive(w, n).specialize(p),
                res.weighted,
            )
        )
    return cases, results


def _inertia_cases(results, workers: int = 1):
    cases = []
    grid = list(WMIN_GRID)
    # delta(4) fires at p=5,13; delta(6) at p=7,13; neither at p=11: the
    # (4,6) and (2,3) censuses see order-4/order-3/order-6 units fix exactly
    # the sub-weight tuples the delta indicators select.
    grid += [((4, 6), 0, p) for p in (5, 7, 11, 13)]
    grid += [((2, 3), 0, p) for p in (11, 13)]
    for weights, n, p in grid:
        res = results.get((weights, n, p))
        if res is None:
            res = enumerate_wmin(weights, n, p, workers=workers)
        cases.append(
            _timed_case(
                f"inertia weights={weights} n={n} p={p}",
                lambda w=weights, n=n, p=p: inertia_wmin_motive(
                    w, n, units_by_order(p)
                ).specialize(p),
                res.orbits,
            )
        )
    return cases


def realizable_gammas(lam0: int, lam1: int, n: int) -> list[VanishingCondition]:
    out = []
    for a_exact in (True, False):
        for b_exact in (True, False):
            if not (a_exact or b_exact):
                continue
            for a in range(1, lam0 * n + 1):
                for b in range(1, lam1 * n + 1):
                    g = VanishingCondition(a, b, a_exact, b_exact)
                    if g.realizable(lam0, lam1, n):
                        out.append(g)
    return out


def _stratum_cases(lam0, lam1, n, p, gammas=None, workers=1, budget=DEFAULT_BUDGET, force=False):
    cases = []
    for gamma in gammas if gammas is not None else realizable_gammas(lam0, lam1, n):
        res = enumerate_stratum(lam0, lam1, n, gamma, p, workers=workers, budget=budget, force=force)
        cases.append(
            _timed_case(
                f"stratum ({lam0},{lam1}) n={n} gamma=({gamma}) p={p}",
                lambda g=gamma: stratum_gamma_motive(lam0, lam1, n, g).specialize(p),
                res.weighted,
            )
        )
    return cases


def random_weierstrass_model(rng: random.Random, p: int, n: int):
    """A random minimal height-n model with nonzero discriminant (rejection)."""
    from .tate import WeierstrassModel
    from .wls import WeightedLinearSeries, minimality_defect

    while True:
        a4 = BinaryForm(p, [rng.randrange(p) for _ in range(4 * n + 1)])
        a6 = BinaryForm(p, [rng.randrange(p) for _ in range(6 * n + 1)])
        if a4.is_zero and a6.is_zero:
            continue
        series = WeightedLinearSeries(WeightVector.of(4, 6), n, (a4, a6))
        if minimality_defect(series):
            continue
        try:
            return WeierstrassModel(a4, a6, n)
        except DegenerateInputError:
            continue


def tate_consistency_sweep(count: int = 10_000, seed: int = 0, p: int = 5, n: int = 1) -> dict:
    """Criterion-5 sweep: classification vs heights on random minimal models."""
    from .tate import FORCED_DELTA_VALUATION, classify_all
    from .wls import WeightedLinearSeries, height_report

    rng = random.Random(seed)
    failures = []
    for i in range(count):
        model = random_weierstrass_model(rng, p, n)
        reports, summary = classify_all(model)
        if summary.nu_delta_total != 12 * n:
            failures.append((i, "delta degree sum"))
            continue
        series = WeightedLinearSeries(WeightVector.of(4, 6), n, (model.a4, model.a6))
        hrep = height_report(series, require_minimal=True)
        base_places = {ld.place for ld in hrep.locals}
        additive_places = {r.place for r in reports if r.twist is not None}
        if base_places != additive_places:
            failures.append((i, "additive places vs base points"))
            continue
        bad_nu = [
            r for r in reports
            if FORCED_DELTA_VALUATION(r.kodaira) != r.nu_delta
        ]
        if bad_nu:
            failures.append((i, "forced nu(Delta)"))
            continue
        if summary.gamma != hrep.gamma_multiset:
            failures.append((i, "Gamma multisets"))
            continue
    return {"checked": count, "failures": len(failures), "first": failures[:3]}


def structure_sweep(seed: int = 0) -> dict:
    """Criterion-8 sweep: exact height decomposition, minimalize roundtrips,
    the multiplicity/twist bijection, and scaling invariance of reports."""
    from .wls import (
        WeightedLinearSeries,
        canonical_representative,
        equivalent,
        height_report,
        minimality_defect,
        minimalize,
        multiplicity_of_twist,
        twist_of_multiplicity,
        unminimalize,
    )

    rng = random.Random(seed)
    failures: list[str] = []

    # exact decomposition on exhaustive small spaces
    for weights, n, p in (
        ((1, 1), 0, 5), ((1, 2), 0, 5), ((2, 3), 0, 5),
        ((1, 1), 1, 5), ((1, 2), 1, 5), ((2, 3), 1, 5),
    ):
        wv = WeightVector(weights)
        sizes = [w * n + 1 for w in weights]
        total = p ** sum(sizes)
        for idx in range(total):
            rem = idx
            forms = []
            for k in sizes:
                rem, sub = divmod(rem, p**k)
                coeffs = []
                for _ in range(k):
                    sub, c = divmod(sub, p)
                    coeffs.append(c)
                forms.append(BinaryForm(p, coeffs))
            if all(f.is_zero for f in forms):
                continue
            series = WeightedLinearSeries(wv, n, forms)
            rep = height_report(series)
            delta_sum = sum((ld.delta for ld in rep.locals), Fraction(0))
            if Fraction(rep.ht) != rep.ht_stable + delta_sum:
                failures.append(f"decomposition {weights} idx={idx}")
                break

    # random (4,6) inputs: decomposition + minimalize roundtrip/idempotence
    wv46 = WeightVector.of(4, 6)
    for i in range(10_000):
        n = rng.choice((1, 2))
        a4 = BinaryForm(5, [rng.randrange(5) for _ in range(4 * n + 1)])
        a6 = BinaryForm(5, [rng.randrange(5) for _ in range(6 * n + 1)])
        if a4.is_zero and a6.is_zero:
            continue
        series = WeightedLinearSeries(wv46, n, (a4, a6))
        rep = height_report(series)
        delta_sum = sum((ld.delta for ld in rep.locals), Fraction(0))
        if Fraction(rep.ht) != rep.ht_stable + delta_sum:
            failures.append(f"decomposition (4,6) i={i}")
            break
        minimal, h = minimalize(series)
        if minimality_defect(minimal) != 0:
            failures.append(f"minimalize defect i={i}")
            break
        if minimalize(minimal)[0] != minimal:
            failures.append(f"minimalize idempotence i={i}")
            break
        if unminimalize(minimal, h) != series:
            failures.append(f"minimalize roundtrip i={i}")
            break

    # multiplicity <-> twist bijection, exhaustive for kappa <= 60
    for kappa in range(2, 61):
        for m in range(1, kappa):
            if multiplicity_of_twist(twist_of_multiplicity(m, kappa), kappa) != m:
                failures.append(f"bijection kappa={kappa} m={m}")

    # equivalence implies identical reports
    for i in range(1_000):
        n = 1
        a4 = BinaryForm(5, [rng.randrange(5) for _ in range(5)])
        a6 = BinaryForm(5, [rng.randrange(5) for _ in range(7)])
        if a4.is_zero and a6.is_zero:
            continue
        series = WeightedLinearSeries(wv46, n, (a4, a6))
        u = rng.randrange(1, 5)
        scaled = WeightedLinearSeries(
            wv46, n, (a4.scalar_mul(pow(u, 4, 5)), a6.scalar_mul(pow(u, 6, 5)))
        )
        if not equivalent(series, scaled):
            failures.append(f"equivalence i={i}")
            break
        if height_report(series) != height_report(scaled):
            failures.append(f"report invariance i={i}")
            break
        if canonical_representative(series) != canonical_representative(scaled):
            failures.append(f"canonical rep i={i}")
            break

    return {"failures": len(failures), "first": failures[:3]}


def _count_cases():
    from .motive import ambient_identity_check

    cases = []
    for q in (5, 7, 11, 13):
        for m in (1, 2, 3):
            for mode in ("weighted", "unweighted"):
                rep = count_curves(q, m, mode)
                cases.append(
                    _timed_case(
                        f"count {mode} q={q} m={m}",
                        rep.value_closed,
                        rep.value_sum,
                    )
                )
            for theta in ("II", "III", "IV", "I0*-generic", "I0*-j0",
                          "I0*-j1728", "IV*", "III*", "II*"):
                rep = count_curves(q, m, "kodaira", theta)
                cases.append(
                    _timed_case(
                        f"count kodaira {theta} q={q} m={m}",
                        rep.value_closed,
                        rep.value_sum,
                    )
                )
    # the worked identities, verbatim
    for q in (5, 7, 11, 13):
        rep = count_curves(q, 1, "kodaira", "II")
        cases.append(
            _timed_case(
                f"identity N(F_{q}(t), II, q^12) = 2(q^2-1)q^8",
                Fraction(2 * (q**2 - 1) * q**8),
                rep.value_sum,
            )
        )
    repw = count_curves(5, 2, "weighted")
    cases.append(
        _timed_case(
            "identity N^w(F_5(t), 5^24)",
            Fraction(5**9 - 1, 5**8 - 5**7) * 5**20 - 5**4,
            repw.value_sum,
        )
    )
    repu = count_curves(5, 1, "unweighted")
    cases.append(
        _timed_case(
            "identity N(F_5(t), 5^12)",
            2 * Fraction(5**9 - 1, 5**8 - 5**7) * 5**10
            - 2 * 5**2
            + 2 * Fraction(5**3 - 1, 5**3 - 5**2) * 5**4
            + 2,
            repu.value_sum,
        )
    )
    return cases


def _symbolic_cases():
    from .motive import ambient_identity_check

    cases = []
    for weights in ((4, 6), (2, 3), (1, 1, 1), (2, 4, 6), (1, 5)):
        cases.append(
            _timed_case(
                f"ambient identity weights={weights} to t^6",
                True,
                lambda w=weights: ambient_identity_check(w, 6),
            )
        )
    t0 = time.perf_counter()
    agree = True
    for d1 in range(9):
        for d2 in range(9):
            for shape in ("geq_exact", "exact_geq", "exact_exact"):
                for a in range(1, min(d1, 4) + 1):
                    for b in range(1, min(d2, 4) + 1):
                        closed = poly_cond_motive(shape, a, b, d1, d2)
                        rec = poly_cond_motive(shape, a, b, d1, d2, recursive=True)
                        if closed != rec:
                            agree = False
    cases.append(
        VerifyCase(
            "poly closed form == recursion (a,b<=4, d<=8)",
            "True",
            str(agree),
            agree,
            time.perf_counter() - t0,
        )
    )
    return cases


@dataclass
class VerifyReport:
    suite: str
    ok: bool
    cases: list[VerifyCase]
    skipped: list[str]
    seconds: float

    def first_failure(self) -> VerifyCase | None:
        for c in self.cases:
            if not c.match:
                return c
        return None

    def to_json(self):
        return {
            "suite": self.suite,
            "ok": self.ok,
            "cases": [c.to_json() for c in self.cases],
            "skipped": self.skipped,
            "seconds": round(self.seconds, 3),
        }


def verify(
    suite: str = "core",
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> VerifyReport:
    """Run every formula-vs-oracle pair of the acceptance suite."""
    if suite not in ("core", "heavy"):
        raise ValueError("suite must be 'core' or 'heavy'")
    t0 = time.perf_counter()
    cases: list[VerifyCase] = []
    skipped: list[str] = []
    cases += _poly_cases()
    wmin_cases, results = _wmin_cases(workers=workers)
    cases += wmin_cases
    cases += _inertia_cases(results, workers=workers)
    cases += _stratum_cases(2, 3, 1, 5, workers=workers)
    if suite == "heavy":
        heavy_gammas = [
            VanishingCondition.parse(s) for s in (">=1,1", "1,>=2", "2,3")
        ]
        cases += _stratum_cases(
            4, 6, 1, 5, gammas=heavy_gammas, workers=workers,
            budget=budget, force=True,
        )
    else:
        skipped.append("stratum (4,6) n=1 p=5 (heavy; run with --suite heavy)")
    tate = tate_consistency_sweep(10_000, seed=seed)
    cases.append(
        VerifyCase("tate consistency 10^4 models", "0 failures",
                   f"{tate['failures']} failures", tate["failures"] == 0, 0.0)
    )
    cases += _count_cases()
    cases += _symbolic_cases()
    structure = structure_sweep(seed=seed)
    cases.append(
        VerifyCase("structural properties", "0 failures",
                   f"{structure['failures']} failures", structure["failures"] == 0, 0.0)
    )
    ok = all(c.match for c in cases)
    return VerifyReport(suite, ok, cases, skipped, time.perf_counter() - t0)
