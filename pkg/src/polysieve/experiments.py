"""High-throughput scans over n and the final constants audit.

The scanner decides solvability of p_m(x)+p_m(y)+p_m(z) = n for every
n <= limit with coordinates drawn from an almost-prime allowed set.  It
materializes the allowed values once, builds the pairwise-sum table as a
big-integer bitset, then sweeps the third coordinate; no per-n cubic loop.
The final exception extraction is partitioned into byte ranges, sized by
the POLYSIEVE_THREADS environment variable, and merged order-normalized,
so reports are identical for every thread count.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import factorize, is_prime, smallest_prime_factors, solve_linear_congruence
from .polygonal import PolygonalFamily, p_m, target_invariants

_MODES = ("omega_budget", "zero_one_prime")


@dataclass(frozen=True)
class ScanConfig:
    m: int
    limit: int
    max_omega: int = 2
    allow_zero: bool = True
    nonneg: bool = False
    mode: str = "omega_budget"

    def __post_init__(self):
        if self.limit < 1:
            raise ValueError("limit must be at least 1")
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}")
        PolygonalFamily(self.m)


@dataclass(frozen=True)
class ScanReport:
    config: ScanConfig
    representable_count: int
    exceptional: tuple[int, ...]
    exceptional_capped: bool
    density: Fraction
    runtime_ms: int


def _allowed_x(config: ScanConfig) -> list[int]:
    """All integers x admitted by the config with p_m(x) <= limit."""
    family = PolygonalFamily(config.m)
    xs = []
    x = 1
    while p_m(family, x) <= config.limit:
        xs.append(x)
        x += 1
    if not config.nonneg:
        x = -1
        while p_m(family, x) <= config.limit:
            xs.append(x)
            x -= 1
    xmax = max(abs(x) for x in xs) if xs else 1
    spf = smallest_prime_factors(xmax)
    omega = [0] * (xmax + 1)
    for k in range(2, xmax + 1):
        omega[k] = omega[k // spf[k]] + 1
    out = []
    if config.allow_zero:
        out.append(0)
    for x in xs:
        ax = abs(x)
        if config.mode == "omega_budget":
            if omega[ax] <= config.max_omega:
                out.append(x)
        else:  # zero_one_prime
            if ax == 1 or spf[ax] == ax:
                out.append(x)
    return sorted(out)


def allowed_values(config: ScanConfig) -> list[int]:
    """Distinct attainable p_m values over the allowed coordinate set."""
    family = PolygonalFamily(config.m)
    vals = {p_m(family, x) for x in _allowed_x(config)}
    return sorted(v for v in vals if v <= config.limit)


def _extract_zero_bits(rep: int, limit: int, lo: int, hi: int) -> list[int]:
    """Indices of unset bits of rep within [lo, hi) intersect [0, limit]."""
    hi = min(hi, limit + 1)
    if lo >= hi:
        return []
    width = hi - lo
    chunk = (rep >> lo) & ((1 << width) - 1)
    missing = ~chunk & ((1 << width) - 1)
    out = []
    data = missing.to_bytes((width + 7) // 8, "little")
    for i, byte in enumerate(data):
        while byte:
            b = byte & -byte
            out.append(lo + i * 8 + b.bit_length() - 1)
            byte ^= b
    return [n for n in out if n < hi]


def _thread_count() -> int:
    raw = os.environ.get("POLYSIEVE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def eureka_scan(config: ScanConfig, exception_cap: int | None = None) -> ScanReport:
    """Decide representability of every n <= limit under the config."""
    start = time.perf_counter()
    limit = config.limit
    values = allowed_values(config)
    full = (1 << (limit + 1)) - 1
    mask = 0
    for v in values:
        mask |= 1 << v
    pair = 0
    for v in values:
        pair |= mask << v
    pair &= full
    rep = 0
    for v in values:
        rep |= pair << v
    rep &= full

    count = rep.bit_count()
    threads = _thread_count()
    span = limit + 1
    step = max(1, -(-span // threads))
    bounds = [(k * step, min((k + 1) * step, span)) for k in range(threads)]
    bounds = [(lo, hi) for lo, hi in bounds if lo < hi]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        chunks = list(
            pool.map(lambda b: _extract_zero_bits(rep, limit, b[0], b[1]), bounds)
        )
    exceptions: list[int] = []
    for chunk in chunks:
        exceptions.extend(chunk)
    capped = exception_cap is not None and len(exceptions) > exception_cap
    if capped:
        exceptions = exceptions[:exception_cap]
    runtime_ms = int((time.perf_counter() - start) * 1000)
    return ScanReport(
        config, count, tuple(exceptions), capped, Fraction(count, span), runtime_ms
    )


def naive_representable(config: ScanConfig, n: int) -> bool:
    """Direct three-way check (oracle for the table-based scanner)."""
    values = [v for v in allowed_values(config) if v <= n]
    vset = set(values)
    for v1 in values:
        if v1 > n:
            break
        for v2 in values:
            if v1 + v2 > n:
                break
            if n - v1 - v2 in vset:
                return True
    return False


def density_one_membership(family: PolygonalFamily, n: int) -> bool:
    """Exact decision of sf(h) >= (log h)^7 via escalating precision."""
    import mpmath as mp

    tgt = target_invariants(family, n)
    verdicts = []
    for dps in (60, 100):
        with mp.workdps(dps):
            verdicts.append(mp.mpf(tgt.sf_h) >= mp.log(tgt.h) ** 7)
    if verdicts[0] != verdicts[1]:
        raise ArithmeticError(f"precision-unstable membership decision at n={n}")
    return verdicts[0]


def density_one_census(family: PolygonalFamily, limit: int) -> Fraction:
    """Fraction of n <= limit inside the density-one set (report only).

    Squarefree parts of h(n) are extracted with a stride sieve over the
    arithmetic progression, so the census runs in about linear time.
    """
    import mpmath as mp

    m = family.m
    A, C = 8 * (m - 2), 3 * (m - 4) ** 2
    rem = [A * n + C for n in range(limit + 1)]
    hmax = rem[-1]
    for p in _odd_primes_upto(math.isqrt(hmax)):
        p2 = p * p
        sol = solve_linear_congruence(A % p2, (-C) % p2, p2)
        if sol is None:
            continue
        n0, step = sol
        for n in range(n0, limit + 1, step):
            while rem[n] % p2 == 0:
                rem[n] //= p2
    members = 0
    with mp.workdps(60):
        # (log h)^7 is increasing in h; scan with a running threshold
        for n in range(limit + 1):
            h = A * n + C
            if rem[n] >= mp.log(h) ** 7:
                members += 1
    return Fraction(members, limit + 1)


def _odd_primes_upto(n: int) -> list[int]:
    from .arith import primes_upto

    return [p for p in primes_upto(n) if p != 2]


@dataclass(frozen=True)
class ConstantCheck:
    name: str
    statement: str
    passed: bool


def constants_audit() -> tuple[ConstantCheck, ...]:
    """Exact-arithmetic audit of the final sieving constants."""
    checks = []
    lhs = 621 * Fraction(1, 12719) + Fraction(231, 512)
    checks.append(
        ConstantCheck(
            "exponent_margin",
            f"621/12719 + 231/512 = {lhs} < 1/2",
            lhs < Fraction(1, 2),
        )
    )
    # 1 - e^(19-24) * 1.645^10 > 0 via e^5 > 148 and 1.645^10 < 146
    e_lower = sum(Fraction(1, math.factorial(k)) for k in range(9))
    ok = (
        e_lower**5 > 148
        and Fraction(1645, 1000) ** 10 < 146
        and Fraction(146, 148) < 1
    )
    checks.append(
        ConstantCheck(
            "sieve_positivity_s24",
            "e^-5 < 1/148 and 1.645^10 < 146, so 1 - e^(19-24)*1.645^10 > 0",
            ok,
        )
    )
    lhs2 = Fraction(41, 16) * 6 + Fraction(5, 2) * 3 + 3
    checks.append(
        ConstantCheck(
            "level_exponent_identity",
            f"41/16*6 + 5/2*3 + 3 = {lhs2} == 207/8",
            lhs2 == Fraction(207, 8),
        )
    )
    checks.append(
        ConstantCheck(
            "prime_budget",
            "floor(12719/2) = 6359 and 6359 + 2 = 6361",
            12719 // 2 == 6359 and 6359 + 2 == 6361,
        )
    )
    return tuple(checks)


def report_emit(report: ScanReport, fmt: str, include_runtime: bool = False) -> str:
    """Deterministic serialization of a scan report (json or csv)."""
    if fmt == "json":
        payload = {
            "config": {
                "m": report.config.m,
                "limit": report.config.limit,
                "max_omega": report.config.max_omega,
                "allow_zero": report.config.allow_zero,
                "nonneg": report.config.nonneg,
                "mode": report.config.mode,
            },
            "representable_count": report.representable_count,
            "exceptional": sorted(report.exceptional),
            "exceptional_capped": report.exceptional_capped,
            "density": f"{report.density.numerator}/{report.density.denominator}",
        }
        if include_runtime:
            payload["runtime_ms"] = report.runtime_ms
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))
    if fmt == "csv":
        if report.exceptional_capped:
            raise ValueError("per-n csv needs the uncapped exception list")
        missing = set(report.exceptional)
        lines = ["n,representable"]
        lines.extend(
            f"{n},{0 if n in missing else 1}" for n in range(report.config.limit + 1)
        )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
