"""Rosser weights and the executable sieve inequalities.

Weights lambda^+/lambda^- are truncated Moebius weights over odd squarefree
d (with an optional pseudo-prime 2^a extension).  Threshold comparisons
p < y_m = (D / p_1...p_m)^(1/beta) are decided exactly by cross-multiplied
integer powers whenever beta is rational; a tie p = y_m fails the strict
inequality.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, is_prime
from .polygonal import DivisorTriple, PolygonalFamily, count_sieved


@dataclass(frozen=True)
class RosserWeightSystem:
    D: Fraction
    beta_R: Fraction
    two_adic_a: int | None = None
    prime_universe: tuple[int, ...] = ()

    def __init__(self, D, beta_R, two_adic_a=None, prime_universe=()):
        object.__setattr__(self, "D", Fraction(D))
        object.__setattr__(self, "beta_R", Fraction(beta_R))
        object.__setattr__(self, "two_adic_a", two_adic_a)
        object.__setattr__(self, "prime_universe", tuple(prime_universe))
        if self.D <= 0 or self.beta_R <= 0:
            raise ValueError("D and beta_R must be positive")


def y_m(system: RosserWeightSystem, prefix: tuple[int, ...] = ()) -> float:
    """Threshold y_m = (D / p1...pm)^(1/beta) as a float (display only)."""
    prod = math.prod(prefix) if prefix else 1
    return float(system.D / prod) ** float(1 / system.beta_R)


def _below_threshold(system: RosserWeightSystem, prefix_prod: int, p: int) -> bool:
    # p < (D/prefix)^(1/beta)  <=>  p^num * prefix^den < D^den  (beta = num/den)
    num, den = system.beta_R.numerator, system.beta_R.denominator
    lhs = Fraction(p) ** num * Fraction(prefix_prod) ** den
    return lhs < system.D**den


def _split(system: RosserWeightSystem, d: int) -> tuple[int, list[int]]:
    """(mu-sign of the 2^a part, odd primes of d descending)."""
    if d < 1:
        raise ValueError("d must be positive")
    two = d & -d
    odd = d // two
    fac = factorize(odd)
    if any(e > 1 for _, e in fac.factors):
        raise ValueError(f"odd part of {d} is not squarefree")
    sign = 1
    if two > 1:
        a = system.two_adic_a
        if a is None or a < 1:
            raise ValueError("even d requires a 2^a pseudo-prime in the system")
        b, rest = 0, two
        while rest % (1 << a) == 0:
            rest >>= a
            b += 1
        if rest != 1:
            raise ValueError(f"2-part of {d} is not a power of 2^{a}")
        sign = -1 if b == 1 else 0  # mu(2^b) treating 2^a as a prime
    primes = sorted((p for p, _ in fac.factors), reverse=True)
    if system.prime_universe:
        allowed = set(system.prime_universe)
        if any(p not in allowed for p in primes):
            raise ValueError("d leaves the declared prime universe")
    return sign, primes


def lambda_plus(system: RosserWeightSystem, d: int) -> int:
    """Upper-bound Rosser weight; conditions at odd positions 1,3,5,..."""
    sign, primes = _split(system, d)
    if sign == 0:
        return 0
    r = len(primes)
    prod = 1
    for idx, p in enumerate(primes, start=1):
        prod *= p
        if idx % 2 == 1 and not _below_threshold(system, prod, p):
            return 0
    return sign * (-1) ** r


def lambda_minus(system: RosserWeightSystem, d: int) -> int:
    """Lower-bound Rosser weight; conditions at even positions 2,4,...

    The l = 0 condition is vacuous (standard Rosser-Iwaniec convention),
    so lambda^-_1 = 1 and single primes always carry weight -1.
    """
    sign, primes = _split(system, d)
    if sign == 0:
        return 0
    r = len(primes)
    prod = 1
    for idx, p in enumerate(primes, start=1):
        prod *= p
        if idx % 2 == 0 and not _below_threshold(system, prod, p):
            return 0
    return sign * (-1) ** r


def Lambda_minus(system: RosserWeightSystem, d: int) -> int:
    """Combined lower weight 3*lambda^- - 2*lambda^+ (bounded by 5)."""
    return 3 * lambda_minus(system, d) - 2 * lambda_plus(system, d)


def _divisors_of_squarefree(c: int, system: RosserWeightSystem) -> list[int]:
    two = c & -c
    odd = c // two
    fac = factorize(odd)
    if any(e > 1 for _, e in fac.factors):
        raise ValueError(f"odd part of {c} is not squarefree")
    divs = [1]
    for p, _ in fac.factors:
        divs += [d * p for d in divs]
    if two > 1:
        a = system.two_adic_a
        if a is None or two != 1 << a:
            raise ValueError("even c must carry exactly the pseudo-prime 2^a")
        divs += [d * two for d in divs]
    return divs


def _mu(system: RosserWeightSystem, d: int) -> int:
    two = d & -d
    odd = d // two
    sign = -1 if two > 1 else 1  # pseudo-prime contributes one factor
    return sign * (-1) ** factorize(odd).omega


def fundamental_inequality_check(system: RosserWeightSystem, c: int) -> bool:
    """sum lambda^- <= sum mu <= sum lambda^+ over the divisors of c."""
    divs = _divisors_of_squarefree(c, system)
    lo = sum(lambda_minus(system, d) for d in divs)
    mid = sum(_mu(system, d) for d in divs)
    hi = sum(lambda_plus(system, d) for d in divs)
    return lo <= mid <= hi


def triple_product_inequality_check(
    system: RosserWeightSystem, c1: int, c2: int, c3: int
) -> bool:
    """prod_j sum mu >= sum_k (sum lambda^-) prod_{j != k} (sum lambda^+)
    - 2 prod_j sum lambda^+, by direct expansion."""
    sums = []
    for c in (c1, c2, c3):
        divs = _divisors_of_squarefree(c, system)
        sums.append(
            (
                sum(lambda_minus(system, d) for d in divs),
                sum(_mu(system, d) for d in divs),
                sum(lambda_plus(system, d) for d in divs),
            )
        )
    lhs = math.prod(s[1] for s in sums)
    rhs = -2 * math.prod(s[2] for s in sums)
    for k in range(3):
        term = sums[k][0]
        for j in range(3):
            if j != k:
                term *= sums[j][2]
        rhs += term
    return lhs >= rhs


def sieve_lower_transform_check(
    family: PolygonalFamily,
    n: int,
    P1: frozenset[int] | set[int],
    P2: frozenset[int] | set[int],
    a: int,
    system: RosserWeightSystem,
    ell: DivisorTriple | None = None,
) -> bool:
    """Brute-force validation of the sieve lower-bound transform.

    Checks S_{a,h}(A_ell, P1 u P2) >= sum over divisor triples d of
    prod(P2) of Lambda^-_{d1} lambda^+_{d2} lambda^+_{d3} S_{a,h}(A_{d ell}, P1),
    with every count produced by direct enumeration.
    """
    P1, P2 = frozenset(P1), frozenset(P2)
    if P1 & P2:
        raise ValueError("P1 and P2 must be disjoint")
    if ell is None:
        ell = DivisorTriple(1, 1, 1)
    if any(ell.product % p == 0 for p in P2):
        raise ValueError("primes of P2 must not divide ell")
    lhs = count_sieved(family, n, ell, P1 | P2, a)
    divs = [1]
    for p in sorted(P2):
        divs += [d * p for d in divs]
    weights = {d: (Lambda_minus(system, d), lambda_plus(system, d)) for d in divs}
    rhs = 0
    for d1 in divs:
        w1 = weights[d1][0]
        if not w1:
            continue
        for d2 in divs:
            w2 = weights[d2][1]
            if not w2:
                continue
            for d3 in divs:
                w3 = weights[d3][1]
                if not w3:
                    continue
                scaled = DivisorTriple(
                    ell.d1 * d1, ell.d2 * d2, ell.d3 * d3, ell.two_adic_a
                )
                rhs += w1 * w2 * w3 * count_sieved(family, n, scaled, P1, a)
    return lhs >= rhs
