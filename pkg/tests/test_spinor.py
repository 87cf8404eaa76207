import itertools
from fractions import Fraction

import pytest

from polysieve.arith import kronecker, primes_upto
from polysieve.polygonal import DivisorTriple, PolygonalFamily, target_invariants
from polysieve.spinor import (
    SpinorKind,
    genus_equals_spinor_genus_d1,
    spinor_norm_group,
    theta_spn_equals_gen_odd,
    unary_obstruction_support,
)

UNITS = SpinorKind.UNITS_TIMES_SQUARES
SQUARES = SpinorKind.SQUARES_ONLY


# fixture rows (p, m, d, expected kind, expected case)
TABLE_ROWS = [
    (3, 5, (1, 1, 1), SQUARES, "2a"),       # p = 3 | (m-2), no divisors
    (3, 3, (3, 3, 3), SQUARES, "2a"),       # p = 3 divides all d_j
    (5, 3, (5, 5, 1), UNITS, "2c"),         # (2|5) = -1
    (7, 3, (7, 7, 1), SQUARES, "2c"),       # (2|7) = +1
    (7, 11, (7, 7, 1), UNITS, "2c"),        # 7 | (m-4)
    (5, 7, (5, 1, 1), UNITS, "2b"),         # 5 does not divide m-2
    (3, 5, (3, 1, 1), SQUARES, "2b"),       # 3 | (m-2)
    (3, 5, (3, 3, 1), SQUARES, "2d"),       # two divisors, p | (m-2)
    (5, 3, (1, 1, 1), UNITS, "1"),
    (7, 3, (7, 7, 7), UNITS, "2a"),
    (2, 9, (3, 5, 1), UNITS, "p2"),
]


@pytest.mark.parametrize("p,m,d,kind,case", TABLE_ROWS)
def test_spinor_table_rows(p, m, d, kind, case):
    group = spinor_norm_group(p, PolygonalFamily(m), DivisorTriple(*d))
    assert group.kind is kind
    assert group.case == case


def test_spinor_hypothesis_rejection():
    with pytest.raises(ValueError):
        spinor_norm_group(2, PolygonalFamily(3), DivisorTriple(2, 1, 1, 1))
    with pytest.raises(ValueError):
        spinor_norm_group(3, PolygonalFamily(6), DivisorTriple(1, 1, 1))
    with pytest.raises(ValueError):
        spinor_norm_group(4, PolygonalFamily(3), DivisorTriple(1, 1, 1))


def test_spinor_table_totality():
    # every hypothesis-satisfying input classifies, and the case analysis
    # matches the printed table on all divisibility patterns
    for p in primes_upto(49):
        if p == 2:
            continue
        for m in range(3, 30, 2):
            fam = PolygonalFamily(m)
            for pattern in itertools.product((0, 1), repeat=3):
                d = DivisorTriple(*(p**e for e in pattern))
                group = spinor_norm_group(p, fam, d)
                k = sum(pattern)
                if (m - 2) % p and k == 0:
                    assert group.kind is UNITS
                elif k in (0, 3):
                    assert group.kind is (SQUARES if p == 3 else UNITS)
                elif k == 1:
                    assert group.kind is (SQUARES if (m - 2) % p == 0 else UNITS)
                elif (m - 2) % p == 0:
                    assert group.kind is SQUARES
                else:
                    expected = UNITS if ((m - 4) % p == 0 or kronecker(2, p) == -1) else SQUARES
                    assert group.kind is expected


def test_genus_equals_spinor_genus_for_all_odd_m():
    for m in range(3, 100, 2):
        ok, witness = genus_equals_spinor_genus_d1(PolygonalFamily(m))
        assert ok, m
        if (m - 2) % 3 == 0:
            assert witness[3] == SQUARES.value
        else:
            assert all(v == UNITS.value for k, v in witness.items())


def test_theta_spn_equals_gen_grid():
    for m in (3, 5, 7, 9, 11):
        fam = PolygonalFamily(m)
        for d in itertools.product((1, 3, 5, 15), repeat=3):
            assert theta_spn_equals_gen_odd(fam, DivisorTriple(*d))
    with pytest.raises(ValueError):
        theta_spn_equals_gen_odd(PolygonalFamily(3), DivisorTriple(2, 1, 1, 1))


def test_all_odd_squares_are_one_mod_eight():
    assert {x * x % 8 for x in range(1, 16, 2)} == {1}


def test_unary_obstruction_examples():
    fam3 = PolygonalFamily(3)
    t1 = target_invariants(fam3, 1)  # sf(h) = 11
    rep = unary_obstruction_support(t1, DivisorTriple(1, 1, 1), (2, 0, 0), fam3)
    assert not rep.supported and rep.failing_prime == 11
    rep = unary_obstruction_support(t1, DivisorTriple(1, 1, 1), (2, 2, 2), fam3)
    assert rep.bound == Fraction(1, 16)
    fam5 = PolygonalFamily(5)
    t75 = target_invariants(fam5, 3)  # sf = 3 and 3 | (m-2): condition (2)
    rep = unary_obstruction_support(t75, DivisorTriple(7, 1, 1), (1, 0, 0), fam5)
    assert rep.supported
    # zero 2-adic pattern forces the defect to vanish
    rep = unary_obstruction_support(t75, DivisorTriple(7, 1, 1), (0, 0, 0), fam5)
    assert not rep.supported and rep.bound == 1


def test_unary_obstruction_condition_one():
    # p = 7 | sf(h), exactly two divisors, (2|7) = 1: supported
    fam3 = PolygonalFamily(3)
    n = (7 - 3) // 8 + 7  # solve 8n + 3 = 0 mod 7 -> n = 4 mod 7
    t = target_invariants(fam3, 4)
    assert t.sf_h % 7 == 0
    rep = unary_obstruction_support(t, DivisorTriple(7, 7, 1), (1, 0, 0), fam3)
    assert rep.supported
    rep = unary_obstruction_support(t, DivisorTriple(7, 1, 1), (1, 0, 0), fam3)
    assert not rep.supported and rep.failing_prime == 7


def test_containment_chain_against_unary_predicate():
    # if the local group at some odd p | sf(h) contains the units, the
    # obstruction cannot be supported at that prime
    fam3 = PolygonalFamily(3)
    for n in range(0, 60):
        t = target_invariants(fam3, n)
        for d in (DivisorTriple(1, 1, 1), DivisorTriple(5, 5, 1), DivisorTriple(3, 1, 1)):
            rep = unary_obstruction_support(t, d, (1, 1, 0), fam3)
            if rep.supported:
                for p, _ in __import__("polysieve.arith", fromlist=["factorize"]).factorize(t.sf_h).factors:
                    assert spinor_norm_group(p, fam3, d).kind is SQUARES
