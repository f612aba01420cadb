"""Exact lcm of consecutive terms and the two divisibility oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterator, Sequence

from .errors import DegenerateDifference, DomainError
from .progression import Progression, terms
from .qcalc import q_factorial


def lcm2(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return abs(a // gcd(a, b) * b)


def lcm_of(values) -> int:
    out = 1
    for v in values:
        out = lcm2(out, v)
    return out


def lcm_range(p: Progression, k: int, n: int) -> int:
    """``lcm{u_k, ..., u_n}`` by a left fold with gcd reduction."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    return lcm_of(terms(p, k, n))


@dataclass
class PrefixLcmStream:
    """Iterator over ``(n, u_n, lcm(u_1..u_n))`` for ``n = 1, 2, ...``.

    Stateful and single-consumer; build a fresh one per consumer.
    """

    p: Progression
    n: int = 0
    lcm: int = 1
    _u: int = field(default=0, repr=False)

    def __post_init__(self):
        self._u = self.p.u0

    def __iter__(self) -> Iterator[tuple[int, int, int]]:
        return self

    def __next__(self) -> tuple[int, int, int]:
        p = self.p
        # u_{n+1} = q u_n + (r + u0 - q u0), i.e. r [n+1]_q + u0
        self._u = p.q * self._u + p.r + p.u0 - p.q * p.u0
        self.n += 1
        self.lcm = lcm2(self.lcm, self._u)
        return self.n, self._u, self.lcm


def prefix_stream(p: Progression) -> PrefixLcmStream:
    return PrefixLcmStream(p)


def prefix_lcms(p: Progression, n_max: int) -> list[int]:
    """``[L_1, ..., L_{n_max}]``."""
    out = []
    for n, _, L in prefix_stream(p):
        if n > n_max:
            break
        out.append(L)
    return out


def fundamental_theorem_check(values: Sequence[int]) -> bool:
    """Does ``prod(u_i)`` divide ``lcm(u_i) * lcm_j prod_{i != j} |u_i - u_j|``?

    Raises :class:`DegenerateDifference` if two values coincide, since the
    inner products would then vanish.
    """
    values = list(values)
    if not values:
        raise DomainError("values must be non-empty")
    if any(v == 0 for v in values):
        raise DomainError("values must be non-zero")
    if len(set(values)) != len(values):
        raise DegenerateDifference(f"duplicate values in {values}")
    inner = [
        prod(abs(ui - uj) for i, ui in enumerate(values) if i != j)
        for j, uj in enumerate(values)
    ]
    m = lcm_of(values) * lcm_of(inner)
    return m % prod(values) == 0


def theorem1_check(p: Progression, k: int, n: int) -> bool:
    """Is ``lcm{u_k..u_n} * [n-k]_q!`` a multiple of ``u_k ... u_n``?"""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    us = terms(p, k, n)
    return lcm_of(us) * q_factorial(n - k, p.q) % prod(us) == 0


def theorem1_sweep(p: Progression, n_max: int):
    """Check that C_(n,k) divides lcm(u_k..u_n) for every ``1 <= k <= n <= n_max``.

    Returns the first failing ``(k, n)`` or ``None``. For each k the lcm,
    product and q-factorial are extended incrementally in n.
    """
    us = terms(p, 0, n_max)
    for k in range(1, n_max + 1):
        L, P, F, qi = 1, 1, 1, 0
        for n in range(k, n_max + 1):
            u = us[n]
            L = lcm2(L, u)
            P *= u
            if n > k:
                qi = qi * p.q + 1 if p.q > 1 else qi + 1
                F *= qi
            if (L * F) % P:
                return k, n
    return None
