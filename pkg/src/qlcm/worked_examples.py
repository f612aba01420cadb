"""Three concrete lcm lower bounds for ``2^n - 1``, ``2^n + 1`` and ``3^n + 1``.

Each lcm is folded straight from the raw sequence and then compared against
the same value obtained through the matching q-progression, so the two
routes check each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import log2_ratio
from .lcm_engine import lcm2, prefix_lcms
from .progression import make_progression


@dataclass(frozen=True)
class ExampleRow:
    bullet: int
    label: str
    n: int
    lcm: int
    lhs4: int
    rhs4: int
    route_agrees: bool

    @property
    def holds(self) -> bool:
        return self.lhs4 >= self.rhs4 and self.route_agrees

    @property
    def slack_log2(self) -> float:
        return log2_ratio(self.lhs4, self.rhs4) / 4

    def to_dict(self) -> dict:
        return {
            "bullet": self.bullet,
            "sequence": self.label,
            "n": self.n,
            "lcm_bits": self.lcm.bit_length(),
            "holds": self.holds,
            "route_agrees": self.route_agrees,
            "slack_log2": self.slack_log2,
        }


def _raw_prefix_lcms(f, n_max):
    out, L = [], 1
    for i in range(1, n_max + 1):
        L = lcm2(L, f(i))
        out.append(L)
    return out


def _split(base, e):
    return base ** max(0, -e), base ** max(0, e)


def mersenne_rows(n_max: int) -> list[ExampleRow]:
    """``lcm{2^i - 1} >= 2^(n(n-1)/4)``."""
    raw = _raw_prefix_lcms(lambda i: 2**i - 1, n_max)
    via = prefix_lcms(make_progression(2, 1, 0), n_max)
    rows = []
    for n in range(1, n_max + 1):
        L = raw[n - 1]
        rows.append(ExampleRow(1, "2^n-1", n, L, L**4, 2 ** (n * (n - 1)), L == via[n - 1]))
    return rows


def fermat_like_rows(n_max: int) -> list[ExampleRow]:
    """``lcm{2^i + 1} >= 3 * 2^((n-1)(n-4)/4)``."""
    raw = _raw_prefix_lcms(lambda i: 2**i + 1, n_max)
    via = prefix_lcms(make_progression(2, 1, 2), n_max)
    rows = []
    for n in range(1, n_max + 1):
        L = raw[n - 1]
        left, right = _split(2, (n - 1) * (n - 4))
        rows.append(ExampleRow(2, "2^n+1", n, L, L**4 * left, 81 * right, L == via[n - 1]))
    return rows


def base3_rows(n_max: int) -> list[ExampleRow]:
    """``lcm{3^i + 1} >= 4 * 3^((n-1)(n-4)/4)``.

    Every ``3^i + 1`` is even, so the lcm is twice the lcm of the halves
    ``(3^i + 1)/2 = [i]_3 + 1``; that factorisation is checked too.
    """
    raw = _raw_prefix_lcms(lambda i: 3**i + 1, n_max)
    halves = _raw_prefix_lcms(lambda i: (3**i + 1) // 2, n_max)
    via = prefix_lcms(make_progression(3, 1, 1), n_max)
    rows = []
    for n in range(1, n_max + 1):
        L = raw[n - 1]
        agrees = L == 2 * halves[n - 1] and halves[n - 1] == via[n - 1]
        left, right = _split(3, (n - 1) * (n - 4))
        rows.append(ExampleRow(3, "3^n+1", n, L, L**4 * left, 256 * right, agrees))
    return rows


def all_rows(n_max: int) -> list[ExampleRow]:
    return mersenne_rows(n_max) + fermat_like_rows(n_max) + base3_rows(n_max)
