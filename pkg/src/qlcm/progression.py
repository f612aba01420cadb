"""q-arithmetic progressions ``u_n = r [n]_q + u0`` and the C_{n,k} machinery.

A :class:`Progression` is only constructible through :func:`make_progression`
(or :func:`from_geometric`), which enforces ``gcd(u0, r) = gcd(u1, q) = 1``.
Everything that depends on the maximiser of ``C_{n,k}`` (``f_eval``,
``k_index``, ``l_index``) requires ``q >= 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .errors import CoprimalityError, DomainError, UnsupportedBase
from .qcalc import q_factorial, q_int


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


@dataclass(frozen=True, order=True)
class Progression:
    q: int
    r: int
    u0: int

    @property
    def u1(self) -> int:
        return self.r + self.u0

    @property
    def shift(self) -> int:
        """The affine part ``u0 (q - 1) + 1 - r`` of the threshold function."""
        return self.u0 * (self.q - 1) + 1 - self.r

    def __str__(self) -> str:
        return f"(q={self.q}, r={self.r}, u0={self.u0})"


@dataclass(frozen=True)
class GeometricShift:
    """The sequence ``v_n = a q^n + b``."""

    a: int
    b: int
    q: int

    def __post_init__(self):
        if not all(_is_int(x) for x in (self.a, self.b, self.q)):
            raise DomainError("a, b, q must be integers")
        if self.a < 1:
            raise DomainError(f"a must be >= 1, got {self.a}")
        if self.q < 2:
            raise DomainError(f"q must be >= 2, got {self.q}")
        if self.b < -self.a:
            raise DomainError(f"b must be >= -a, got b={self.b}, a={self.a}")
        if gcd(self.a * self.q, self.b) != 1:
            raise CoprimalityError("aq,b", self.a * self.q, self.b)
        if gcd(self.a + self.b, self.q - 1) != 1:
            raise CoprimalityError("a+b,q-1", self.a + self.b, self.q - 1)

    def term(self, n: int) -> int:
        return self.a * self.q**n + self.b


@dataclass(frozen=True)
class CnkValue:
    value: Fraction
    n: int
    k: int


def make_progression(q: int, r: int, u0: int) -> Progression:
    """Validate ``(q, r, u0)`` and build the progression.

    Raises :class:`CoprimalityError` with ``which="u0,r"`` or ``"u1,q"`` when
    one of the gcd hypotheses fails.
    """
    if not all(_is_int(x) for x in (q, r, u0)):
        raise DomainError(f"q, r, u0 must be integers, got {(q, r, u0)!r}")
    if q < 1 or r < 1:
        raise DomainError(f"q and r must be positive, got q={q}, r={r}")
    if u0 < 0:
        raise DomainError(f"u0 must be >= 0, got {u0}")
    if gcd(u0, r) != 1:
        raise CoprimalityError("u0,r", u0, r)
    if gcd(r + u0, q) != 1:
        raise CoprimalityError("u1,q", r + u0, q)
    return Progression(q, r, u0)


def is_valid(q: int, r: int, u0: int) -> bool:
    try:
        make_progression(q, r, u0)
    except DomainError:
        return False
    return True


def from_geometric(gs: GeometricShift) -> Progression:
    """Rewrite ``a q^n + b`` as ``a(q-1) [n]_q + (a + b)``."""
    p = make_progression(gs.q, gs.a * (gs.q - 1), gs.a + gs.b)
    return p


def term(p: Progression, n: int) -> int:
    if not _is_int(n) or n < 0:
        raise DomainError(f"index must be a non-negative integer, got {n!r}")
    return p.r * q_int(n, p.q) + p.u0


def terms(p: Progression, start: int, stop: int) -> list[int]:
    """``[u_start, ..., u_stop]`` (inclusive), built with one running q-integer."""
    if start < 0 or stop < start - 1:
        raise DomainError(f"bad index range {start}..{stop}")
    out = []
    qi = q_int(start, p.q)
    for _ in range(start, stop + 1):
        out.append(p.r * qi + p.u0)
        qi = qi * p.q + 1 if p.q > 1 else qi + 1
    return out


def gap(p: Progression, i: int, j: int) -> int:
    """``|u_i - u_j|`` in closed form ``r q^min(i,j) [|i-j|]_q``."""
    if not (_is_int(i) and _is_int(j)) or i < 0 or j < 0:
        raise DomainError(f"indices must be non-negative integers, got {i!r}, {j!r}")
    return p.r * p.q ** min(i, j) * q_int(abs(i - j), p.q)


def cnk(p: Progression, n: int, k: int) -> CnkValue:
    """``C_{n,k} = (u_k u_{k+1} ... u_n) / [n-k]_q!`` for ``1 <= k <= n``."""
    if not (_is_int(n) and _is_int(k)) or not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k!r}, n={n!r}")
    num = prod(terms(p, k, n))
    return CnkValue(Fraction(num, q_factorial(n - k, p.q)), n, k)


def _require_q2(p: Progression) -> None:
    if p.q < 2:
        raise UnsupportedBase("this operation requires q >= 2")


def f_eval(p: Progression, x: int) -> Fraction:
    """Threshold function ``q^(x-1) (r q^(x-1) + u0(q-1) + 1 - r)`` at integer x."""
    _require_q2(p)
    if not _is_int(x):
        raise DomainError(f"x must be an integer, got {x!r}")
    t = Fraction(p.q) ** (x - 1)
    return t * (p.r * t + p.shift)


def _below(p: Progression, k: int, qn: int) -> bool:
    # f(k) <= q^n, in integers whenever k >= 1
    if k >= 1:
        t = p.q ** (k - 1)
        return t * (p.r * t + p.shift) <= qn
    return f_eval(p, k) <= qn


def k_index(p: Progression, n: int) -> int:
    """Largest integer k with ``f(k) <= q^n``; always ``<= n``.

    The predicate is downward closed in k, so the scan walks down from n with
    a doubling stride until it holds and then bisects the last stride.
    """
    _require_q2(p)
    if not _is_int(n) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    qn = p.q**n
    hi = n
    if _below(p, hi, qn):
        return hi
    step = 1
    lo = hi - step
    while not _below(p, lo, qn):
        hi = lo
        step *= 2
        lo = hi - step
    # invariant: _below(lo) and not _below(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _below(p, mid, qn):
            lo = mid
        else:
            hi = mid
    return lo


def l_index(p: Progression, n: int) -> int:
    """``max(1, k_n)``; the maximiser of ``C_{n,k}`` over ``1 <= k <= n``."""
    return max(1, k_index(p, n))
