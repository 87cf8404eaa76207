"""Generalized m-gonal numbers, target invariants, and representation counts.

The central change of variables is the completed square
    8(m-2) * p_m(x) + (m-4)**2 = (2(m-2)x - (m-4))**2,
so that p_m(x)+p_m(y)+p_m(z) = n becomes X^2+Y^2+Z^2 = h(n) on an arithmetic
progression, with h(n) = 8(m-2)n + 3(m-4)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .arith import (
    DiscriminantDecomposition,
    factorize,
    fundamental_decomposition,
    squarefree_part,
)


@dataclass(frozen=True)
class PolygonalFamily:
    """The polygon parameter m with the validity flags used in the theory."""

    m: int

    def __post_init__(self):
        if self.m < 3:
            raise ValueError("m must be at least 3")

    @property
    def m_odd(self) -> bool:
        return self.m % 2 == 1

    @property
    def m_mod3_ok(self) -> bool:
        return self.m % 3 != 1

    @property
    def m_mod5_ok(self) -> bool:
        return self.m % 5 != 4

    @property
    def all_flags(self) -> bool:
        return self.m_odd and self.m_mod3_ok and self.m_mod5_ok


def p_m(family: PolygonalFamily, x: int) -> int:
    """Generalized m-gonal number ((m-2)x^2 - (m-4)x) / 2, any integer x."""
    m = family.m
    return ((m - 2) * x * x - (m - 4) * x) // 2


@dataclass(frozen=True)
class TargetInvariants:
    n: int
    h: int
    sf_h: int
    disc: DiscriminantDecomposition


def target_invariants(family: PolygonalFamily, n: int) -> TargetInvariants:
    """h = 8(m-2)n + 3(m-4)^2 with its squarefree part and discriminant."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    m = family.m
    h = 8 * (m - 2) * n + 3 * (m - 4) ** 2
    if family.m_odd and h % 8 != 3:
        raise AssertionError("h = 3 mod 8 must hold for odd m")
    return TargetInvariants(n, h, squarefree_part(h), fundamental_decomposition(h))


def _odd_part_squarefree(d: int) -> bool:
    odd = d >> ((d & -d).bit_length() - 1)
    return squarefree_part(odd) == odd


@dataclass(frozen=True)
class DivisorTriple:
    """Divisor constraints (d1,d2,d3); odd parts squarefree, 2-parts in {1, 2^a}."""

    d1: int
    d2: int
    d3: int
    two_adic_a: int = 0

    def __post_init__(self):
        if min(self.d1, self.d2, self.d3) < 1 or self.two_adic_a < 0:
            raise ValueError("divisors must be positive and a >= 0")
        for d in self.parts:
            if not _odd_part_squarefree(d):
                raise ValueError(f"odd part of {d} is not squarefree")
            two = d & -d
            if two != 1 and two != 1 << self.two_adic_a:
                raise ValueError(f"2-part of {d} must be 1 or 2^{self.two_adic_a}")

    @property
    def parts(self) -> tuple[int, int, int]:
        return (self.d1, self.d2, self.d3)

    @property
    def product(self) -> int:
        return self.d1 * self.d2 * self.d3

    @property
    def gcd(self) -> int:
        return math.gcd(math.gcd(self.d1, self.d2), self.d3)

    @property
    def lcm(self) -> int:
        return math.lcm(self.d1, self.d2, self.d3)

    def ord_tuple(self, p: int) -> tuple[int, int, int]:
        return tuple(factorize(d).ord(p) for d in self.parts)  # type: ignore[return-value]

    def odd_prime_support(self) -> list[int]:
        return [p for p, _ in factorize(self.product).factors if p != 2]


UNIT_TRIPLE = DivisorTriple(1, 1, 1)


@dataclass(frozen=True)
class RepresentationTriple:
    x1: int
    x2: int
    x3: int


def _coord_range(m: int, mult: int, bound_sq: int) -> range:
    # integer x with (2(m-2)*mult*x - (m-4))^2 <= bound_sq
    s = math.isqrt(bound_sq)
    a = 2 * (m - 2) * mult
    lo = math.ceil((-s + (m - 4)) / a)
    hi = math.floor((s + (m - 4)) / a)
    return range(lo, hi + 1)


def _inner_solutions(
    family: PolygonalFamily, n: int, mults: tuple[int, int, int]
) -> Iterable[tuple[int, int, int]]:
    """Triples (y1,y2,y3) with sum p_m(mults[j]*y_j) = n, lexicographic order."""
    m = family.m
    m1, m2, m3 = mults
    bound = 8 * (m - 2) * n + (m - 4) ** 2
    a3 = 2 * (m - 2) * m3
    for y1 in _coord_range(m, m1, bound):
        r1 = n - p_m(family, m1 * y1)
        if r1 < 0:
            continue
        b1 = 8 * (m - 2) * r1 + (m - 4) ** 2
        for y2 in _coord_range(m, m2, b1):
            r2 = r1 - p_m(family, m2 * y2)
            if r2 < 0:
                continue
            t = 8 * (m - 2) * r2 + (m - 4) ** 2
            s = math.isqrt(t)
            if s * s != t:
                continue
            ys = []
            for sgn in ({s, -s} if s else {0}):
                num = sgn + (m - 4)
                if num % a3 == 0:
                    ys.append(num // a3)
            for y3 in sorted(ys):
                yield (y1, y2, y3)


def enumerate_representations(
    family: PolygonalFamily, n: int, d: DivisorTriple = UNIT_TRIPLE
) -> list[RepresentationTriple]:
    """All (x1,x2,x3) with d_j | x_j and p_m(x1)+p_m(x2)+p_m(x3) = n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [
        RepresentationTriple(d.d1 * y1, d.d2 * y2, d.d3 * y3)
        for y1, y2, y3 in _inner_solutions(family, n, d.parts)
    ]


def r_X(family: PolygonalFamily, n: int, d: DivisorTriple = UNIT_TRIPLE) -> int:
    """Number of representations of n on the coset with divisors d."""
    return sum(1 for _ in _inner_solutions(family, n, d.parts))


def _coord_admissible(y: int, P: frozenset[int], a: int | None) -> bool:
    if a is None:
        if not P:
            return True
        if y == 0:
            return False
        return all(y % p for p in P)
    if y == 0:
        return False
    if y % (1 << a) == 0:
        return False
    return all(y % p for p in P)


def count_sieved(
    family: PolygonalFamily,
    n: int,
    ell: DivisorTriple = UNIT_TRIPLE,
    P: Iterable[int] = (),
    a: int | None = None,
) -> int:
    """Size of the sieved solution set for the coset with divisors ell.

    Counts inner triples y with sum p_m(ell_j * y_j) = n whose coordinates
    avoid every prime of P (and, when the 2-adic cap a is given, additionally
    satisfy ord_2(y_j) < a with y_j != 0).  With a set, the value is computed
    both directly and by the mu(2^alpha) inclusion-exclusion over scaled
    cosets, and the two counts are asserted equal.
    """
    Pf = frozenset(P)
    if any(p == 2 or not _is_odd_prime(p) for p in Pf):
        raise ValueError("P must contain odd primes only")
    direct = sum(
        1
        for y in _inner_solutions(family, n, ell.parts)
        if all(_coord_admissible(c, Pf, a) for c in y)
    )
    if a is None:
        return direct
    ie = 0
    for alpha in ((a1, a2, a3) for a1 in (0, 1) for a2 in (0, 1) for a3 in (0, 1)):
        mults = tuple(ell.parts[j] << (a * alpha[j]) for j in range(3))
        sign = (-1) ** sum(alpha)
        ie += sign * sum(
            1
            for y in _inner_solutions(family, n, mults)  # type: ignore[arg-type]
            if all(_coord_admissible(c, Pf, None) for c in y)
        )
    if ie != direct:
        raise AssertionError(
            f"inclusion-exclusion count {ie} != direct count {direct} for n={n}"
        )
    return direct


def _is_odd_prime(p: int) -> bool:
    from .arith import is_prime

    return p % 2 == 1 and is_prime(p)
