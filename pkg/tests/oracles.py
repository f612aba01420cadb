"""Brute-force reference implementations used only by the tests.

None of these share code with the package: q-integers come from the closed
form, lcms from pairwise gcd over the whole list, thresholds from linear
scans, and bound reconstruction from 200-bit interval arithmetic.
"""

from fractions import Fraction
from math import gcd

import mpmath
from mpmath.libmp import to_rational


def q_int(n, q):
    return n if q == 1 else (q**n - 1) // (q - 1)


def q_fact(n, q):
    out = 1
    for i in range(1, n + 1):
        out *= q_int(i, q)
    return out


def pascal(n_max):
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append([1] + [prev[i - 1] + prev[i] for i in range(1, n)] + [1])
    return rows


def u(q, r, u0, n):
    return r * q_int(n, q) + u0


def naive_lcm(xs):
    """lcm via ``prod / gcd`` merging of the whole list, recomputed from scratch."""
    xs = [abs(x) for x in xs]
    out = xs[0]
    for x in xs[1:]:
        g = gcd(out, x)
        out = out * x // g
    return out


def valid(q, r, u0):
    return gcd(u0, r) == 1 and gcd(r + u0, q) == 1


def cnk(q, r, u0, n, k):
    num = 1
    for i in range(k, n + 1):
        num *= u(q, r, u0, i)
    return Fraction(num, q_fact(n - k, q))


def k_n(q, r, u0, n):
    """Linear scan of the integer form ``[n-k+1]_q >= u_{k-1}`` for k >= 1."""
    best = None
    for k in range(1, n + 1):
        if q_int(n - k + 1, q) >= u(q, r, u0, k - 1):
            best = k
    if best is not None:
        return best
    # k_n <= 0: scan the rational threshold downward
    k = 0
    while True:
        t = Fraction(q) ** (k - 1)
        if t * (r * t + u0 * (q - 1) + 1 - r) <= q**n:
            return k
        k -= 1


def ratio_interval(kind, q, r, u0, n, lcm, prec=200):
    """Exact endpoints of an interval enclosing ``(lcm / bound)^4``.

    The bound is rebuilt from square roots and fractional powers of q.

    ``kind`` is ``"Theorem2"``, ``"Theorem3"``, ``"HongFeng"`` or ``"BouslaFarhi"``.
    """
    iv = mpmath.iv
    old = iv.prec
    iv.prec = prec
    try:
        q_, r_ = iv.mpf(q), iv.mpf(r)
        shift = u0 * (q - 1) + 1 - r
        m = n - 1
        qpow = q_ ** (iv.mpf((n - 1) * (n - 4)) / 4) if q > 1 else iv.mpf(1)
        if kind == "Theorem2":
            A = max(Fraction(0), Fraction(shift, 2 * r))
            a = iv.mpf(A.numerator) / A.denominator
            bound = (r + u0) * ((r_ + 1) / (iv.sqrt(r_) * (a + 1))) ** m * qpow
        elif kind == "Theorem3":
            B = max(Fraction(r), Fraction(shift, 2))
            b = iv.mpf(B.numerator) / B.denominator
            bound = (r + u0) * ((r_ + 1) / (2 * iv.sqrt(b))) ** m * qpow
        elif kind == "HongFeng":
            bound = iv.mpf(r + u0) * (r_ + 1) ** m
        elif kind == "BouslaFarhi":
            bound = q_ ** (iv.mpf(n * n) / 4 - iv.mpf(n) / 2 - 1)
        else:
            raise ValueError(kind)
        box = (iv.mpf(lcm) / bound) ** 4
    finally:
        iv.prec = old
    lo, hi = box._mpi_
    return Fraction(*to_rational(lo)), Fraction(*to_rational(hi))


def valid_grid(q_hi=6, r_hi=6, u0_hi=6, q_lo=1):
    return [
        (q, r, u0)
        for q in range(q_lo, q_hi + 1)
        for r in range(1, r_hi + 1)
        for u0 in range(0, u0_hi + 1)
        if valid(q, r, u0)
    ]
