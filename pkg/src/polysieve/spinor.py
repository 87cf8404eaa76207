"""Table-driven local spinor norm groups and the unary-obstruction predicate.

The classification is encoded as data (divisibility pattern -> group), with
the governing case recorded for reporting.  The genus/spinor-genus decision
for the unconstrained coset re-runs the idele-index-1 argument instead of
hard-coding the answer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, is_prime, kronecker
from .polygonal import DivisorTriple, PolygonalFamily, TargetInvariants


class SpinorKind(enum.Enum):
    UNITS_TIMES_SQUARES = "Zp* (Qp*)^2"
    SQUARES_ONLY = "(Qp*)^2"


@dataclass(frozen=True)
class SpinorNormGroup:
    kind: SpinorKind
    case: str

    @property
    def contains_units(self) -> bool:
        return self.kind is SpinorKind.UNITS_TIMES_SQUARES


def spinor_norm_group(
    p: int, family: PolygonalFamily, d: DivisorTriple
) -> SpinorNormGroup:
    """Local spinor norm group of the coset with divisors d at the prime p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    m = family.m
    if not family.m_odd:
        raise ValueError("hypothesis violated: m must be odd")
    if p == 2:
        if any(dj % 2 == 0 for dj in d.parts):
            raise ValueError("hypothesis violated: the p = 2 case needs odd divisors")
        return SpinorNormGroup(SpinorKind.UNITS_TIMES_SQUARES, "p2")
    k = sum(1 for dj in d.parts if dj % p == 0)
    if (m - 2) % p != 0 and k == 0:
        return SpinorNormGroup(SpinorKind.UNITS_TIMES_SQUARES, "1")
    if k in (0, 3):
        kind = SpinorKind.SQUARES_ONLY if p == 3 else SpinorKind.UNITS_TIMES_SQUARES
        return SpinorNormGroup(kind, "2a")
    if k == 1:
        if (m - 2) % p == 0:
            return SpinorNormGroup(SpinorKind.SQUARES_ONLY, "2b")
        return SpinorNormGroup(SpinorKind.UNITS_TIMES_SQUARES, "2b")
    # k == 2
    if (m - 2) % p == 0:
        return SpinorNormGroup(SpinorKind.SQUARES_ONLY, "2d")
    if (m - 4) % p == 0 or kronecker(2, p) == -1:
        return SpinorNormGroup(SpinorKind.UNITS_TIMES_SQUARES, "2c")
    return SpinorNormGroup(SpinorKind.SQUARES_ONLY, "2c")


def genus_equals_spinor_genus_d1(
    family: PolygonalFamily,
) -> tuple[bool, dict[int | str, str]]:
    """Idele-index-1 decision for the unconstrained coset, with witness table.

    Every local group contains the units except possibly p = 3 when
    3 | (m-2); in that case the nontrivial unit class is represented by the
    rational 2, which lies in the spinor norm group at every other place,
    so the index is still 1.
    """
    if not family.m_odd:
        raise ValueError("hypothesis violated: m must be odd")
    m = family.m
    d1 = DivisorTriple(1, 1, 1)
    witness: dict[int | str, str] = {"generic": SpinorKind.UNITS_TIMES_SQUARES.value}
    exceptional: list[int] = []
    probe = {2, 3}
    probe.update(p for p, _ in factorize(m - 2).factors)
    for p in sorted(probe):
        group = spinor_norm_group(p, family, d1)
        witness[p] = group.kind.value
        if not group.contains_units:
            exceptional.append(p)
    if not exceptional:
        return True, witness
    if exceptional == [3]:
        # unit square classes at 3 are {1, 2}; 2 is a global absorber:
        # a unit at every odd p, inside Z2 (Q2*)^2 at 2, positive at infinity
        return True, witness
    return False, witness


def theta_spn_equals_gen_odd(family: PolygonalFamily, d: DivisorTriple) -> bool:
    """Genus and spinor-genus theta series coincide for odd divisor triples.

    Re-derived 2-adically: each (2(m-2) d_j x_j + 4 - m)^2 is an odd square,
    hence 1 mod 8, so represented values are 3 mod 8, while an obstructed
    square class would need t = 7 mod 8.
    """
    if not family.m_odd:
        raise ValueError("hypothesis violated: m must be odd")
    if any(dj % 2 == 0 for dj in d.parts):
        raise ValueError("hypothesis violated: divisors must be odd")
    m = family.m
    residues = set()
    for dj in d.parts:
        for x in range(8):
            residues.add((2 * (m - 2) * dj * x + 4 - m) ** 2 % 8)
    if residues != {1}:  # cannot happen for odd m and odd d
        return False
    # sum of three odd squares is 3 mod 8; 7 * (odd square) is 7 mod 8
    return (3 - 7) % 8 != 0


@dataclass(frozen=True)
class UnaryObstructionReport:
    supported: bool
    bound: Fraction
    failing_prime: int | None = None
    failing_condition: str | None = None


def unary_obstruction_support(
    target: TargetInvariants,
    d: DivisorTriple,
    a: tuple[int, int, int],
    family: PolygonalFamily,
) -> UnaryObstructionReport:
    """Support predicate and 2-adic bound for the spinor/genus defect.

    The defect coefficient can be nonzero only if every prime p | sf(h)
    satisfies: p does not divide 3(m-2)(m-4) with exactly two d_j divisible
    by p and (2|p) = 1; or p = 3 with 3 | (m-2) or all three d_j divisible
    by 3.  The bound 2^(-a1-a2-a3+min a) always applies, and the zero
    2-adic pattern forces the defect to vanish.
    """
    if any(dj % 2 == 0 for dj in d.parts):
        raise ValueError("d must have odd components")
    if min(a) < 0:
        raise ValueError("2-adic exponents must be nonnegative")
    m = family.m
    bound = Fraction(1, 2 ** (sum(a) - min(a)))
    if a == (0, 0, 0):
        return UnaryObstructionReport(False, bound, None, "trivial 2-adic pattern")
    for p, _ in factorize(target.sf_h).factors:
        k = sum(1 for dj in d.parts if dj % p == 0)
        cond1 = (
            (3 * (m - 2) * (m - 4)) % p != 0 and k == 2 and kronecker(2, p) == 1
        )
        cond2 = p == 3 and ((m - 2) % 3 == 0 or k == 3)
        if not (cond1 or cond2):
            reason = f"#{{j: {p}|d_j}} = {k}" if (3 * (m - 2) * (m - 4)) % p else f"p={p} special"
            return UnaryObstructionReport(False, bound, p, reason)
    return UnaryObstructionReport(True, bound)
