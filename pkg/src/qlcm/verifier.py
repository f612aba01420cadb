"""Machine-checkable structural properties of the progressions, and the grid sweep.

Every ``check_*`` function returns a :class:`Verdict`; a failing verdict
carries the first counterexample found as a plain dict so it can be
serialised and replayed with :func:`replay`.
"""

from __future__ import annotations

import itertools
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .bounds import (
    BoundCertificate,
    BoundKind,
    bound_constants,
    bound_holds,
    hong_feng_check,
)
from .errors import DomainError
from .lcm_engine import prefix_lcms, theorem1_sweep
from .progression import (
    GeometricShift,
    Progression,
    gap,
    k_index,
    make_progression,
    terms,
)
from .qcalc import q_factorial

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Verdict:
    suite: str
    ok: bool
    counterexample: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.ok


def _pass(suite: str) -> Verdict:
    return Verdict(suite, True)


def _fail(suite: str, p: Progression, **detail) -> Verdict:
    cx = {"suite": suite, "q": p.q, "r": p.r, "u0": p.u0}
    cx.update({k: (str(v) if isinstance(v, Fraction) else v) for k, v in detail.items()})
    return Verdict(suite, False, cx)


def _k_seq(p: Progression, n_max: int) -> list[int]:
    """``[None, k_1, ..., k_{n_max}]``"""
    return [None] + [k_index(p, n) for n in range(1, n_max + 1)]


def _c_row(us: list[int], facts: list[int], n: int) -> list[Fraction]:
    """``[None, C_{n,1}, ..., C_{n,n}]`` by direct suffix products."""
    row = [None] * (n + 1)
    num = 1
    for k in range(n, 0, -1):
        num *= us[k]
        row[k] = Fraction(num, facts[n - k])
    return row


@lru_cache(maxsize=None)
def _lemma3_counterexample(n_max: int) -> Optional[tuple[int, int, int]]:
    # independent of the progression, so it is checked once per bound
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            rhs2 = (n - k) * (n + k - 1)
            for j in range(k, n + 1):
                s = sum(min(i, j) for i in range(k, n + 1) if i != j)
                if 2 * s > rhs2:
                    return n, k, j
    return None


def check_identities(p: Progression, i_max: int) -> Verdict:
    """Gap identity for ``0 <= i, j <= i_max`` and the min-sum bound."""
    suite = "identities"
    if i_max < 1:
        raise DomainError("i_max must be >= 1")
    us = terms(p, 0, i_max)
    for i in range(i_max + 1):
        for j in range(i_max + 1):
            g = gap(p, i, j)
            if g != abs(us[i] - us[j]):
                return _fail(suite, p, lemma="gap", i=i, j=j, gap=g, diff=abs(us[i] - us[j]))
    bad = _lemma3_counterexample(i_max)
    if bad is not None:
        n, k, j = bad
        return _fail(suite, p, lemma="min_sum", n=n, k=k, j=j)
    return _pass(suite)


def check_unimodality(p: Progression, n: int) -> Verdict:
    """``C_{n,k}`` rises (ties allowed) up to ``k_n`` then strictly falls."""
    suite = "unimodality"
    us = terms(p, 0, n)
    facts = [q_factorial(i, p.q) for i in range(n)]
    return _unimodal_at(p, n, us, facts, k_index(p, n), suite)


def _unimodal_at(p, n, us, facts, kn, suite) -> Verdict:
    row = _c_row(us, facts, n)
    ell = max(1, kn)
    best = max(row[1:])
    if row[ell] != best:
        return _fail(suite, p, n=n, ell=ell, c_ell=row[ell], c_max=best)
    if any(row[k] == best for k in range(ell + 1, n + 1)):
        return _fail(suite, p, n=n, ell=ell, reason="larger maximiser exists")
    for k in range(2, n + 1):
        up = row[k] >= row[k - 1]
        if (k <= kn) != up:
            return _fail(suite, p, n=n, k=k, k_n=kn, reason="shape")
    return _pass(suite)


def check_unimodality_upto(p: Progression, n_max: int) -> Verdict:
    us = terms(p, 0, n_max)
    facts = [q_factorial(i, p.q) for i in range(n_max)]
    ks = _k_seq(p, n_max)
    for n in range(1, n_max + 1):
        v = _unimodal_at(p, n, us, facts, ks[n], "unimodality")
        if not v:
            return v
    return _pass("unimodality")


def check_index_monotonicity(p: Progression, n_max: int) -> Verdict:
    """``k_{n+1} - k_n`` and ``l_{n+1} - l_n`` are 0 or 1, with the step rider."""
    suite = "monotonicity"
    ks = _k_seq(p, n_max)
    for n in range(1, n_max):
        k0, k1 = ks[n], ks[n + 1]
        l0, l1 = max(1, k0), max(1, k1)
        if k1 - k0 not in (0, 1):
            return _fail(suite, p, n=n, k_n=k0, k_next=k1)
        if l1 - l0 not in (0, 1):
            return _fail(suite, p, n=n, ell_n=l0, ell_next=l1)
        if l1 == l0 + 1 and not (l0 == k0 and l1 == k1 == k0 + 1):
            return _fail(suite, p, n=n, k_n=k0, k_next=k1, reason="step rider")
    return _pass(suite)


def c_ell_sequence(p: Progression, n_max: int) -> tuple[list, list]:
    """``([None, l_1, ...], [None, C_{1,l_1}, ...])`` up to ``n_max``."""
    ks = _k_seq(p, n_max)
    ells = [None] + [max(1, k) for k in ks[1:]]
    us = terms(p, 0, n_max)
    facts = [q_factorial(i, p.q) for i in range(n_max)]
    cs = [None]
    for n in range(1, n_max + 1):
        num = 1
        for u in us[ells[n]: n + 1]:
            num *= u
        cs.append(Fraction(num, facts[n - ells[n]]))
    return ells, cs


def check_step_ratio(p: Progression, n_max: int) -> Verdict:
    """``C_{n+1,l_{n+1}} >= (r+1) q^(l_n - 1) C_{n,l_n}`` for ``n < n_max``."""
    suite = "step_ratio"
    ells, cs = c_ell_sequence(p, n_max)
    for n in range(1, n_max):
        rhs = (p.r + 1) * p.q ** (ells[n] - 1) * cs[n]
        if cs[n + 1] < rhs:
            return _fail(suite, p, n=n, lhs=cs[n + 1], rhs=rhs)
    return _pass(suite)


def check_chain_bound(p: Progression, n_max: int) -> Verdict:
    """``lcm >= C_{n,l_n} >= u_1 (r+1)^(n-1) q^S``, S the running sum of ``l_i - 1``."""
    suite = "chain"
    ells, cs = c_ell_sequence(p, n_max)
    lcms = prefix_lcms(p, n_max)
    s = 0
    for n in range(1, n_max + 1):
        rhs = p.u1 * (p.r + 1) ** (n - 1) * p.q**s
        if cs[n] < rhs:
            return _fail(suite, p, n=n, c_ell=cs[n], rhs=rhs)
        if lcms[n - 1] < rhs:
            return _fail(suite, p, n=n, lcm=lcms[n - 1], rhs=rhs)
        if lcms[n - 1] < cs[n]:
            return _fail(suite, p, n=n, lcm=lcms[n - 1], c_ell=cs[n])
        s += ells[n] - 1
    return _pass(suite)


def check_ell_lower_bounds(p: Progression, n_max: int) -> Verdict:
    """Log-free forms ``r(A+1)^2 > q^(n - 2 l_n)`` and ``4B > q^(n - 2 l_n)``."""
    suite = "ell_bounds"
    c = bound_constants(p)
    t2 = p.r * (c.A + 1) ** 2
    t3 = 4 * c.B
    for n in range(1, n_max + 1):
        ell = max(1, k_index(p, n))
        power = Fraction(p.q) ** (n - 2 * ell)
        if not t2 > power:
            return _fail(suite, p, n=n, ell=ell, which="A", lhs=t2, rhs=power)
        if not t3 > power:
            return _fail(suite, p, n=n, ell=ell, which="B", lhs=t3, rhs=power)
    return _pass(suite)


def check_theorem1(p: Progression, n_max: int) -> Verdict:
    bad = theorem1_sweep(p, n_max)
    if bad is None:
        return _pass("theorem1")
    k, n = bad
    return _fail("theorem1", p, k=k, n=n)


def geometric_preimage(p: Progression) -> Optional[GeometricShift]:
    """``(a, b, q)`` with ``a q^n + b = u_n``, if one satisfies the corollary hypotheses."""
    if p.q < 2 or p.r % (p.q - 1):
        return None
    a = p.r // (p.q - 1)
    try:
        return GeometricShift(a, p.u0 - a, p.q)
    except DomainError:
        return None


def applicable_kinds(p: Progression) -> list[BoundKind]:
    if p.q == 1:
        return [BoundKind.HONG_FENG]
    kinds = [BoundKind.THEOREM2, BoundKind.THEOREM3]
    if geometric_preimage(p) is not None:
        kinds += [BoundKind.COROLLARY3, BoundKind.COROLLARY4]
    if (p.r, p.u0) == (1, 0):
        kinds.append(BoundKind.BOUSLA_FARHI)
    return kinds


def certificates(p: Progression, n: int, lcm: Optional[int] = None) -> list[BoundCertificate]:
    gs = geometric_preimage(p)
    return [bound_holds(p, n, kind, geometric=gs, lcm=lcm) for kind in applicable_kinds(p)]


def check_bounds(p: Progression, n_max: int) -> Verdict:
    suite = "bounds"
    lcms = prefix_lcms(p, n_max)
    for n in range(1, n_max + 1):
        for cert in certificates(p, n, lcms[n - 1]):
            if not cert.holds:
                return _fail(suite, p, n=n, kind=str(cert.kind))
        if p.q == 1 and p.u0 >= 1 and not hong_feng_check(p.u0, p.r, n).holds:
            return _fail(suite, p, n=n, kind="HongFeng@u0")
    return _pass(suite)


# name -> (check, needs q >= 2)
SUITES: dict[str, tuple[Callable[[Progression, int], Verdict], bool]] = {
    "identities": (check_identities, False),
    "unimodality": (check_unimodality_upto, True),
    "monotonicity": (check_index_monotonicity, True),
    "step_ratio": (check_step_ratio, True),
    "chain": (check_chain_bound, True),
    "ell_bounds": (check_ell_lower_bounds, True),
    "theorem1": (check_theorem1, False),
    "bounds": (check_bounds, False),
}


def replay(counterexample: dict, n_max: Optional[int] = None) -> Verdict:
    """Re-run the suite named in a serialised counterexample.

    ``n_max`` defaults to the value stored by :func:`run_sweep`.
    """
    cx = counterexample
    p = make_progression(cx["q"], cx["r"], cx["u0"])
    check, _ = SUITES[cx["suite"]]
    return check(p, cx["n_max"] if n_max is None else n_max)


@dataclass(frozen=True)
class SweepGrid:
    q_range: tuple[int, int]
    r_range: tuple[int, int]
    u0_range: tuple[int, int]
    n_max: int
    sample_seed: Optional[int] = None
    sample_size: Optional[int] = None

    def __post_init__(self):
        for name in ("q_range", "r_range", "u0_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise DomainError(f"{name} is empty: {lo}..{hi}")
        if self.n_max < 1:
            raise DomainError("n_max must be >= 1")

    def triples(self) -> Iterable[tuple[int, int, int]]:
        return itertools.product(
            range(self.q_range[0], self.q_range[1] + 1),
            range(self.r_range[0], self.r_range[1] + 1),
            range(self.u0_range[0], self.u0_range[1] + 1),
        )

    def enumerate(self) -> tuple[list[Progression], int]:
        """Valid progressions in enumeration order, plus the skipped count."""
        valid, skipped = [], 0
        for q, r, u0 in self.triples():
            try:
                valid.append(make_progression(q, r, u0))
            except DomainError:
                skipped += 1
        if self.sample_size is not None and self.sample_size < len(valid):
            rng = random.Random(self.sample_seed)
            keep = sorted(rng.sample(range(len(valid)), self.sample_size))
            valid = [valid[i] for i in keep]
        return valid, skipped


@dataclass
class SweepRecord:
    q: int
    r: int
    u0: int
    n: int
    lcm_bits: int
    k_n: Optional[int]
    ell_n: Optional[int]
    verdicts: dict[str, bool]
    slack_log2: float

    def to_dict(self) -> dict:
        return {
            "q": self.q, "r": self.r, "u0": self.u0, "n": self.n,
            "lcm_bits": self.lcm_bits, "k_n": self.k_n, "ell_n": self.ell_n,
            "verdicts": dict(self.verdicts), "slack_log2": self.slack_log2,
        }


@dataclass
class SweepResult:
    records: list[SweepRecord]
    summary: dict
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _records_for(p: Progression, n_max: int) -> list[SweepRecord]:
    lcms = prefix_lcms(p, n_max)
    out = []
    for n in range(1, n_max + 1):
        L = lcms[n - 1]
        certs = certificates(p, n, L)
        kn = k_index(p, n) if p.q >= 2 else None
        out.append(SweepRecord(
            q=p.q, r=p.r, u0=p.u0, n=n,
            lcm_bits=L.bit_length(),
            k_n=kn,
            ell_n=None if kn is None else max(1, kn),
            verdicts={str(c.kind): c.holds for c in certs},
            slack_log2=min(c.slack_log2 for c in certs),
        ))
    return out


def _work(args) -> tuple[list[SweepRecord], list[Verdict], list[str]]:
    p, n_max, suites = args
    verdicts, skipped = [], []
    for name in suites:
        check, needs_q2 = SUITES[name]
        if needs_q2 and p.q < 2:
            skipped.append(name)
            continue
        verdicts.append(check(p, n_max))
    return _records_for(p, n_max), verdicts, skipped


def run_sweep(
    grid: SweepGrid,
    suites: Optional[Iterable[str]] = None,
    jobs: int = 1,
    fail_fast: bool = False,
) -> SweepResult:
    """Run the selected suites over every valid grid point.

    Results are collected in enumeration order whatever ``jobs`` is, so the
    output is identical for any worker count.
    """
    suites = list(SUITES) if suites is None else list(suites)
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise DomainError(f"unknown suites: {', '.join(unknown)}")
    if jobs < 1:
        raise DomainError("jobs must be >= 1")
    progs, skipped = grid.enumerate()
    units = [(p, grid.n_max, suites) for p in progs]

    counts = {s: {"pass": 0, "fail": 0, "not_applicable": 0} for s in suites}
    records: list[SweepRecord] = []
    failures: list[dict] = []
    checked = 0

    def consume(results):
        nonlocal checked
        for recs, verdicts, na in results:
            checked += 1
            records.extend(recs)
            for s in na:
                counts[s]["not_applicable"] += 1
            for v in verdicts:
                counts[v.suite]["pass" if v.ok else "fail"] += 1
                if not v.ok:
                    failures.append({**v.counterexample, "n_max": grid.n_max})
            if failures and fail_fast:
                return

    if jobs == 1 or len(units) <= 1:
        consume(map(_work, units))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            consume(pool.map(_work, units, chunksize=max(1, len(units) // (4 * jobs))))
            if fail_fast and failures:
                pool.shutdown(cancel_futures=True)

    for f in failures:
        log.warning("counterexample: %s", f)
    summary = {
        "grid": {
            "q": list(grid.q_range), "r": list(grid.r_range), "u0": list(grid.u0_range),
            "n_max": grid.n_max, "seed": grid.sample_seed, "sample": grid.sample_size,
        },
        "suites": suites,
        "checked": checked,
        "skipped_gcd": skipped,
        "records": len(records),
        "failures": len(failures),
        "suite_counts": counts,
        "first_counterexample": failures[0] if failures else None,
    }
    return SweepResult(records, summary, failures)

