"""Effective lower bounds for ``lcm{u_1, ..., u_n}`` and exact certificates.

Each bound has the shape ``lcm >= c * x^(n-1) * q^((n-1)(n-4)/4)`` with ``x``
possibly involving a square root. Raising both sides to the 4th power and
moving every denominator (and every negative power of q) to the other side
leaves two positive integers ``lhs4`` and ``rhs4``; the bound holds iff
``lhs4 >= rhs4``. Floats appear only in ``slack_log2``, which is for display.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError, UnsupportedBase
from .lcm_engine import lcm_of, lcm_range
from .progression import GeometricShift, Progression, from_geometric, terms


class BoundKind(str, enum.Enum):
    THEOREM2 = "Theorem2"
    THEOREM3 = "Theorem3"
    COROLLARY3 = "Corollary3"
    COROLLARY4 = "Corollary4"
    HONG_FENG = "HongFeng"
    BOUSLA_FARHI = "BouslaFarhi"

    def __str__(self) -> str:
        return self.value


class Strength(str, enum.Enum):
    T2_STRONGER = "T2Stronger"
    T3_STRONGER = "T3Stronger"
    EQUAL = "Equal"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BoundConstants:
    A: Fraction
    B: Fraction


@dataclass(frozen=True)
class BoundCertificate:
    kind: BoundKind
    n: int
    q: int
    r: int
    u0: int
    lhs4: int
    rhs4: int
    holds: bool
    slack_log2: float

    def to_dict(self) -> dict:
        return {
            "kind": str(self.kind),
            "n": self.n,
            "q": self.q,
            "r": self.r,
            "u0": self.u0,
            "holds": self.holds,
            "slack_log2": self.slack_log2,
            "lhs4": str(self.lhs4),
            "rhs4": str(self.rhs4),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundCertificate":
        return cls(
            kind=BoundKind(d["kind"]),
            n=int(d["n"]),
            q=int(d["q"]),
            r=int(d["r"]),
            u0=int(d["u0"]),
            lhs4=int(d["lhs4"]),
            rhs4=int(d["rhs4"]),
            holds=bool(d["holds"]),
            slack_log2=float(d["slack_log2"]),
        )


def log2_ratio(a: int | Fraction, b: int | Fraction) -> float:
    """``log2(a / b)`` for positive exact values of any size."""
    a, b = Fraction(a), Fraction(b)
    return (
        math.log2(a.numerator) - math.log2(a.denominator)
        - math.log2(b.numerator) + math.log2(b.denominator)
    )


def bound_constants(p: Progression) -> BoundConstants:
    s = p.shift
    return BoundConstants(
        A=max(Fraction(0), Fraction(s, 2 * p.r)),
        B=max(Fraction(p.r), Fraction(s, 2)),
    )


def geometric_constants(gs: GeometricShift) -> tuple[Fraction, Fraction]:
    """``(A', B')`` written directly in terms of ``a, b, q``."""
    a, b, q = gs.a, gs.b, gs.q
    a_prime = max(Fraction(0), Fraction(b, 2 * a) + Fraction(1, 2 * a * (q - 1)))
    b_prime = max(Fraction(a * (q - 1)), Fraction(b * (q - 1) + 1, 2))
    return a_prime, b_prime


def _split_q(q: int, e: int) -> tuple[int, int]:
    """``q^e`` as ``(lhs factor, rhs factor)`` so negative e lands on the left."""
    return q ** max(0, -e), q ** max(0, e)


def _certificate(kind, p, n, lhs4, rhs4) -> BoundCertificate:
    return BoundCertificate(
        kind=kind, n=n, q=p.q, r=p.r, u0=p.u0,
        lhs4=lhs4, rhs4=rhs4, holds=lhs4 >= rhs4,
        slack_log2=log2_ratio(lhs4, rhs4) / 4,
    )


def _sqrt_r_form(L: int, u1: int, r: int, A: Fraction, q: int, n: int) -> tuple[int, int]:
    # L >= u1 ((r+1) / (sqrt(r)(A+1)))^m q^(e/4)
    m, e = n - 1, (n - 1) * (n - 4)
    a_num, a_den = A.numerator, A.denominator
    ql, qr = _split_q(q, e)
    lhs = L**4 * r ** (2 * m) * (a_num + a_den) ** (4 * m) * ql
    rhs = u1**4 * (r + 1) ** (4 * m) * a_den ** (4 * m) * qr
    return lhs, rhs


def _sqrt_b_form(L: int, u1: int, r: int, B: Fraction, q: int, n: int) -> tuple[int, int]:
    # L >= u1 ((r+1) / (2 sqrt(B)))^m q^(e/4)
    m, e = n - 1, (n - 1) * (n - 4)
    ql, qr = _split_q(q, e)
    lhs = L**4 * 16**m * B.numerator ** (2 * m) * ql
    rhs = u1**4 * (r + 1) ** (4 * m) * B.denominator ** (2 * m) * qr
    return lhs, rhs


def bound_holds(
    p: Progression,
    n: int,
    kind: BoundKind,
    geometric: Optional[GeometricShift] = None,
    lcm: Optional[int] = None,
) -> BoundCertificate:
    """Decide one bound instance exactly.

    ``geometric`` is required for the two corollaries and must map onto
    ``p``. ``lcm`` may be passed when ``lcm{u_1..u_n}`` is already known.
    """
    kind = BoundKind(kind)
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if kind is BoundKind.HONG_FENG:
        if p.q != 1:
            raise DomainError("HongFeng applies to q = 1 only")
    elif p.q < 2:
        raise UnsupportedBase(f"{kind} requires q >= 2")
    L = lcm_range(p, 1, n) if lcm is None else lcm

    if kind is BoundKind.THEOREM2:
        lhs, rhs = _sqrt_r_form(L, p.u1, p.r, bound_constants(p).A, p.q, n)
    elif kind is BoundKind.THEOREM3:
        lhs, rhs = _sqrt_b_form(L, p.u1, p.r, bound_constants(p).B, p.q, n)
    elif kind in (BoundKind.COROLLARY3, BoundKind.COROLLARY4):
        if geometric is None:
            raise DomainError(f"{kind} needs the (a, b, q) parameters")
        if from_geometric(geometric) != p:
            raise DomainError(f"{geometric} does not map onto {p}")
        a, b, q = geometric.a, geometric.b, geometric.q
        a_prime, b_prime = geometric_constants(geometric)
        if kind is BoundKind.COROLLARY3:
            lhs, rhs = _sqrt_r_form(L, a * q + b, a * (q - 1), a_prime, q, n)
        else:
            lhs, rhs = _sqrt_b_form(L, a * q + b, a * (q - 1), b_prime, q, n)
    elif kind is BoundKind.HONG_FENG:
        # lcm(u_1, ..., u_n) >= u_1 (r+1)^(n-1): the q = 1 progression started at u_1
        lhs, rhs = L**4, (p.u1 * (p.r + 1) ** (n - 1)) ** 4
    else:
        if (p.r, p.u0) != (1, 0):
            raise DomainError("BouslaFarhi applies to u_n = [n]_q only (r = 1, u0 = 0)")
        ql, qr = _split_q(p.q, n * n - 2 * n - 4)
        lhs, rhs = L**4 * ql, qr
    return _certificate(kind, p, n, lhs, rhs)


def hong_feng_check(u0: int, r: int, n: int) -> BoundCertificate:
    """``lcm(u0, u0 + r, ..., u0 + n r) >= u0 (r + 1)^n``."""
    if u0 < 1 or r < 1 or n < 0:
        raise DomainError(f"need u0 >= 1, r >= 1, n >= 0, got {u0}, {r}, {n}")
    if math.gcd(u0, r) != 1:
        raise DomainError(f"gcd(u0, r) = gcd({u0}, {r}) != 1")
    L = lcm_of(u0 + i * r for i in range(n + 1))
    bound = u0 * (r + 1) ** n
    return BoundCertificate(
        kind=BoundKind.HONG_FENG, n=n, q=1, r=r, u0=u0,
        lhs4=L**4, rhs4=bound**4, holds=L >= bound,
        slack_log2=log2_ratio(L, bound),
    )


def strength_compare(p: Progression) -> Strength:
    """Which of the two general bounds has the larger per-step base."""
    if p.q < 2:
        raise UnsupportedBase("strength_compare requires q >= 2")
    c = bound_constants(p)
    lhs, rhs = 4 * c.B, p.r * (c.A + 1) ** 2
    if lhs > rhs:
        return Strength.T2_STRONGER
    if lhs < rhs:
        return Strength.T3_STRONGER
    return Strength.EQUAL


def bound_log2(p: Progression, n: int, kind: BoundKind) -> float:
    """Display-precision ``log2`` of the right-hand side of a bound."""
    kind = BoundKind(kind)
    m, e = n - 1, (n - 1) * (n - 4)
    lq = math.log2(p.q) if p.q > 1 else 0.0
    if kind is BoundKind.THEOREM2:
        A = bound_constants(p).A
        base = math.log2(p.r + 1) - 0.5 * math.log2(p.r) - log2_ratio(A + 1, 1)
    elif kind is BoundKind.THEOREM3:
        B = bound_constants(p).B
        base = math.log2(p.r + 1) - 1 - 0.5 * log2_ratio(B, 1)
    elif kind is BoundKind.HONG_FENG:
        return math.log2(p.u1) + m * math.log2(p.r + 1)
    elif kind is BoundKind.BOUSLA_FARHI:
        return (n * n - 2 * n - 4) / 4 * lq
    else:
        raise DomainError(f"no direct log form for {kind}; use the equivalent theorem")
    return math.log2(p.u1) + m * base + e / 4 * lq


def remark_diagnostics(p: Progression, n: int) -> dict[str, float]:
    """Display-only diagnostics that are never asserted.

    ``conjectured_slack_log2`` compares the lcm with ``((r+1)/sqrt r)^(n-1)
    q^((n-1)(n-4)/4)`` (constant taken as 1); ``sqrt_product_log2`` is
    ``log2(lcm / sqrt(u_1 ... u_n))``.
    """
    L = lcm_range(p, 1, n)
    lq = math.log2(p.q) if p.q > 1 else 0.0
    conj = (n - 1) * (math.log2(p.r + 1) - 0.5 * math.log2(p.r)) + (n - 1) * (n - 4) / 4 * lq
    half = 0.5 * sum(math.log2(u) for u in terms(p, 1, n))
    return {
        "conjectured_slack_log2": math.log2(L) - conj,
        "sqrt_product_log2": math.log2(L) - half,
    }
