"""Integer-valued q-calculus: q-integers, q-factorials, gaussian binomials.

Every function here works on Python ints and is exact. ``q`` is a positive
integer; ``q = 1`` degenerates to the ordinary integers.
"""

from __future__ import annotations

from .errors import DomainError


def check_base(q: int) -> int:
    if not isinstance(q, int) or isinstance(q, bool) or q < 1:
        raise DomainError(f"q must be a positive integer, got {q!r}")
    return q


def _check_index(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"{name} must be an integer, got {n!r}")
    if n < 0:
        raise DomainError(f"{name} must be >= 0, got {n}")


def q_int(n: int, q: int) -> int:
    """Return ``[n]_q = 1 + q + ... + q^(n-1)``.

    Evaluated with the Horner recurrence ``x -> q*x + 1`` so no division is
    involved; at ``q = 1`` this gives ``n``.

    >>> q_int(4, 3)
    40
    >>> q_int(7, 1)
    7
    """
    _check_index(n)
    check_base(q)
    if q == 1:
        return n
    acc = 0
    for _ in range(n):
        acc = acc * q + 1
    return acc


def q_factorial(n: int, q: int) -> int:
    """``[n]_q! = [1]_q [2]_q ... [n]_q`` with ``[0]_q! = 1``."""
    _check_index(n)
    check_base(q)
    out = 1
    term = 0
    for _ in range(n):
        term = term * q + 1
        out *= term
    return out


def q_binomial(n: int, k: int, q: int) -> int:
    """Gaussian binomial coefficient as an exact factorial quotient.

    The quotient ``[n]_q! / ([k]_q! [n-k]_q!)`` is checked to have zero
    remainder; a nonzero remainder would mean the integrality property is
    broken and raises ``ArithmeticError``.
    """
    _check_index(n)
    if not isinstance(k, int) or isinstance(k, bool) or k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n, got k={k!r}, n={n}")
    check_base(q)
    num = q_factorial(n, q)
    den = q_factorial(k, q) * q_factorial(n - k, q)
    quo, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"[{k}]_q![{n - k}]_q! does not divide [{n}]_q! at q={q}")
    return quo
