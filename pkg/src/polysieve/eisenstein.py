"""Genus representation numbers via the specialized Siegel product.

Class numbers and L-values stay symbolic (rational multiples of pi/sqrt|D|)
so the whole genus coefficient collapses to an exact rational: with
h = |D| t^2 the factor sqrt(h) * L(1, psi_h) equals (2 pi / w) * h(D) * t.
Floats appear only at the reporting boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, is_fundamental_discriminant, kronecker
from .localdensity import LocalDensityQuery, gamma_p, local_density, psi_h
from .polygonal import (
    DivisorTriple,
    PolygonalFamily,
    TargetInvariants,
    UNIT_TRIPLE,
    r_X,
    target_invariants,
)


@dataclass(frozen=True)
class ClassNumberResult:
    delta: int
    h_delta: int
    w_delta: int


def class_number(delta: int) -> ClassNumberResult:
    """Class number of a negative fundamental discriminant.

    Counts reduced primitive forms (a,b,c) with b^2-4ac = delta, |b| <= a <= c,
    and b >= 0 whenever |b| = a or a = c.
    """
    if delta >= 0 or not is_fundamental_discriminant(delta):
        raise ValueError(f"{delta} is not a negative fundamental discriminant")
    count = 0
    for a in range(1, math.isqrt(-delta // 3) + 1):
        for b in range(-a, a + 1):
            if (b - delta) % 2:
                continue
            num = b * b - delta
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (b == -a or a == c):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            count += 1
    w = 6 if delta == -3 else 4 if delta == -4 else 2
    return ClassNumberResult(delta, count, w)


def hurwitz_class_number(N: int) -> Fraction:
    """Hurwitz class number H(N) by reduced-form enumeration (all forms,
    weights 1/2 for (a,0,a) and 1/3 for (a,a,a))."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N == 0:
        return Fraction(-1, 12)
    if (-N) % 4 not in (0, 1):
        return Fraction(0)
    total = Fraction(0)
    for a in range(1, math.isqrt(N // 3) + 1):
        for b in range(-a, a + 1):
            if (b + N) % 2:
                continue
            num = b * b + N
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (b == -a or a == c):
                continue
            if b == 0 and c == a:
                total += Fraction(1, 2)
            elif b == a and c == a:
                total += Fraction(1, 3)
            else:
                total += 1
    return total


@dataclass(frozen=True)
class LValue:
    """L(1, psi_h) = coefficient * pi / sqrt(radicand)."""

    coefficient: Fraction
    radicand: int

    def numeric(self) -> float:
        return float(self.coefficient) * math.pi / math.sqrt(self.radicand)


def l_value(target: TargetInvariants) -> LValue:
    """Dirichlet class number formula: L(1, psi) = 2 pi h(D) / (w sqrt|D|)."""
    cn = class_number(target.disc.delta)
    return LValue(Fraction(2 * cn.h_delta, cn.w_delta), -target.disc.delta)


@dataclass(frozen=True)
class EisensteinCoefficient:
    """Genus representation number; exact rational plus float mirror."""

    value: Fraction
    numeric: float
    h: int

    def __post_init__(self):
        if self.value != 0:
            rel = abs(self.numeric - float(self.value)) / abs(float(self.value))
            if rel > 1e-12:
                raise AssertionError("numeric drifted from the exact value")


def _local_factor(query: LocalDensityQuery) -> Fraction:
    p = query.p
    b = local_density(query)
    psi = psi_h(query.target, p)
    return b * (1 - Fraction(psi, p)) / (1 - Fraction(1, p * p))


def r_gen(
    family: PolygonalFamily, n: int, d: DivisorTriple = UNIT_TRIPLE
) -> EisensteinCoefficient:
    """Siegel product for the genus coefficient of the coset with divisors d.

    Exact evaluation: 12/pi * sqrt(h/d_L) * L(1,psi_h) * prod(local factors)
    * prod(gamma_p), with d_L = 64 (m-2)^6 (d1 d2 d3)^2.
    """
    if not family.m_odd:
        raise ValueError("r_gen requires odd m")
    m = family.m
    tgt = target_invariants(family, n)
    lv = l_value(tgt)
    prefactor = Fraction(12) * lv.coefficient * tgt.disc.t
    prefactor /= 8 * (m - 2) ** 3 * d.product
    value = prefactor
    support = {2}
    support.update(p for p, _ in factorize((m - 2) * d.product).factors if p != 2)
    for p in sorted(support):
        value *= _local_factor(LocalDensityQuery(family, tgt, d, p))
    e1 = 2 * (m - 2) * d.product
    for p, _ in factorize(tgt.h).factors:
        if e1 % p:
            value *= gamma_p(tgt, p)
    return EisensteinCoefficient(value, float(value), tgt.h)


def r_gen_numeric_check(family: PolygonalFamily, n: int, d: DivisorTriple, dps: int = 64) -> float:
    """Recompute r_gen transcendentally at high precision (test support)."""
    import mpmath as mp

    m = family.m
    tgt = target_invariants(family, n)
    cn = class_number(tgt.disc.delta)
    with mp.workdps(dps):
        L = 2 * mp.pi * cn.h_delta / (cn.w_delta * mp.sqrt(-tgt.disc.delta))
        dl = 64 * (m - 2) ** 6 * d.product**2
        val = 12 / mp.pi * mp.sqrt(mp.mpf(tgt.h) / dl) * L
        support = {2}
        support.update(p for p, _ in factorize((m - 2) * d.product).factors if p != 2)
        for p in sorted(support):
            val *= mp.mpf(
                _local_factor(LocalDensityQuery(family, tgt, d, p)).numerator
            ) / _local_factor(LocalDensityQuery(family, tgt, d, p)).denominator
        e1 = 2 * (m - 2) * d.product
        for p, _ in factorize(tgt.h).factors:
            if e1 % p:
                g = gamma_p(tgt, p)
                val *= mp.mpf(g.numerator) / g.denominator
        return float(val)


@dataclass(frozen=True)
class CalibrationResult:
    constant: Fraction | None
    ratios: tuple[tuple[int, Fraction], ...]


def siegel_calibration(family: PolygonalFamily, n_range) -> CalibrationResult:
    """Measure r_X(h) / r_gen(h) across a range of n; m = 3 regime.

    Returns the common constant when the ratio is constant, otherwise the
    full list of deviating ratios for inspection.
    """
    if family.m != 3:
        raise ValueError("calibration runs in the m = 3 single-class regime")
    ratios = []
    for n in n_range:
        brute = r_X(family, n)
        formula = r_gen(family, n).value
        ratios.append((n, Fraction(brute) / formula))
    values = {r for _, r in ratios}
    constant = values.pop() if len(values) == 1 else None
    return CalibrationResult(constant, tuple(ratios))


def r_gen_lower_bound(family: PolygonalFamily, target: TargetInvariants) -> Fraction:
    """Exact evaluation of the d = 1 genus lower bound."""
    if not family.m_odd:
        raise ValueError("the lower bound requires odd m")
    m = family.m
    lv = l_value(target)
    bound = Fraction(12) * lv.coefficient * target.disc.t
    bound /= (m - 2) ** 2
    for p, _ in factorize(m - 2).factors:
        bound /= 1 + Fraction(1, p)
    return bound


def level_invariants(family: PolygonalFamily, d: DivisorTriple) -> tuple[int, int]:
    """Level data (N, M) of the relevant cusp space."""
    m = family.m
    lc = d.lcm
    N = 16 * (m - 2) ** 2 * lc * lc
    M = 2 * (m - 2) * lc // math.gcd(m - 4, lc)
    return N, M
