"""Prime field arithmetic and root-of-unity bookkeeping.

Everything downstream works over F_p with p > 3 (characteristic 2 and 3 are
excluded so the short Weierstrass form and its discriminant behave).  Field
elements are plain ints reduced to the canonical representative in [0, p);
reductions are eager so serialized output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass


class DegenerateInputError(ValueError):
    """Mathematically invalid operation (division by zero, zero form, ...)."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the 2^31 cap we enforce."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_p with p > 3."""

    p: int

    def __post_init__(self) -> None:
        if not (3 < self.p < 2**31):
            raise ValueError(f"p must satisfy 3 < p < 2^31, got {self.p}")
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")

    def units(self) -> range:
        return range(1, self.p)

    def to_json(self) -> dict:
        return {"p": self.p}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        return cls(int(obj["p"]))


def fp_add(a: int, b: int, p: int) -> int:
    return (a + b) % p


def fp_sub(a: int, b: int, p: int) -> int:
    return (a - b) % p


def fp_mul(a: int, b: int, p: int) -> int:
    return a * b % p


def fp_inv(a: int, p: int) -> int:
    if a % p == 0:
        raise DegenerateInputError("division by zero in F_p")
    return pow(a, p - 2, p)


def fp_div(a: int, b: int, p: int) -> int:
    return a * fp_inv(b, p) % p


def fp_pow(a: int, e: int, p: int) -> int:
    if e < 0:
        return pow(fp_inv(a, p), -e, p)
    return pow(a, e, p)


_FP_OPS = {
    "add": fp_add,
    "sub": fp_sub,
    "mul": fp_mul,
    "div": fp_div,
    "pow": fp_pow,
    "inv": None,
}


def fp_arith(a: int, b: int | None, op: str, p: int) -> int:
    """Dispatch-style entry point; `b` is ignored for op='inv'."""
    if op == "inv":
        return fp_inv(a, p)
    if op not in _FP_OPS:
        raise ValueError(f"unknown field op {op!r}")
    if b is None:
        raise ValueError(f"op {op!r} needs two operands")
    return _FP_OPS[op](a % p if op != "pow" else a % p, b if op == "pow" else b % p, p)


def multiplicative_order(u: int, p: int) -> int:
    """Order of the unit u in F_p^*."""
    if u % p == 0:
        raise DegenerateInputError("0 has no multiplicative order")
    order = p - 1
    for d in sorted(divisors(p - 1)):
        if pow(u, d, p) == 1:
            return d
    return order


def divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def euler_phi(n: int) -> int:
    result = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def delta_divides(x: int, q: int) -> int:
    """1 iff x divides q-1, else 0 (the delta indicator of the count formulas)."""
    if x < 1:
        raise ValueError("x must be a positive integer")
    return 1 if (q - 1) % x == 0 else 0


def units_by_order(q: int) -> dict[int, int]:
    """Map each divisor d of q-1 to the number phi(d) of units of exact order d.

    The values sum to q-1: every unit of a finite field is a root of unity.
    """
    if q <= 3:
        raise ValueError("q must exceed 3")
    return {d: euler_phi(d) for d in divisors(q - 1)}
