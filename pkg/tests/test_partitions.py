from fractions import Fraction

import pytest

from nilorb.exactnum import PolyQ, RationalFunctionQ
from nilorb.fforacle import FieldSpec, monic_irreducibles
from nilorb.partitions import (
    Partition,
    centralizer_order,
    divisors,
    inner_product,
    mobius,
    monic_irreducible_count,
    orbit_weight,
    partition_count,
    partitions_of,
    pochhammer_product,
    q_pochhammer,
)

RF = RationalFunctionQ


def conjugate_inner(lam, mu):
    """Test-local route: sum of products of conjugate parts."""
    lc, mc = lam.conjugate().parts, mu.conjugate().parts
    return sum(a * b for a, b in zip(lc, mc))


def multiplicity_inner(lam, mu):
    """Test-local route: min-weighted double sum over multiplicities."""
    em, en = lam.exponential_form(), mu.exponential_form()
    return sum(min(i, j) * a * b for i, a in em.items() for j, b in en.items())


def all_partitions_up_to(w):
    out = []
    for n in range(w + 1):
        out.extend(partitions_of(n))
    return out


# ---------------------------------------------------------------------------
# enumeration


def test_partitions_of_zero():
    assert partitions_of(0) == [Partition()]


def test_partitions_of_four_in_reverse_lex_order():
    assert [p.parts for p in partitions_of(4)] == [
        (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1),
    ]


def test_partitions_of_eight_count():
    assert len(partitions_of(8)) == 22


def test_enumeration_matches_pentagonal_recurrence():
    for n in range(31):
        assert len(partitions_of(n)) == partition_count(n)


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((0,))


def test_weight_and_length():
    lam = Partition((3, 2, 2))
    assert lam.weight == 7
    assert lam.length == 3
    assert lam.exponential_form() == {3: 1, 2: 2}


# ---------------------------------------------------------------------------
# conjugation and the inner product


def test_conjugate_examples():
    assert Partition((3, 2, 2)).conjugate() == Partition((3, 3, 1))
    assert Partition((5,)).conjugate() == Partition((1,) * 5)


def test_conjugate_is_involution():
    for lam in all_partitions_up_to(10):
        assert lam.conjugate().conjugate() == lam


def test_inner_product_examples():
    assert inner_product(Partition((3, 2, 2)), Partition((3, 2, 2))) == 19
    assert inner_product(Partition((1,)), Partition((1,))) == 1
    assert inner_product(Partition((1, 1)), Partition((1, 1))) == 4


def test_inner_product_routes_agree_exhaustively():
    parts = all_partitions_up_to(8)
    for lam in parts:
        for mu in parts:
            expected = conjugate_inner(lam, mu)
            assert expected == multiplicity_inner(lam, mu)
            assert inner_product(lam, mu) == expected


def test_inner_product_symmetry():
    parts = all_partitions_up_to(8)
    for lam in parts:
        for mu in parts:
            assert inner_product(lam, mu) == inner_product(mu, lam)


def test_self_inner_product_lower_bound():
    for lam in all_partitions_up_to(10):
        if lam.weight == 0:
            continue
        assert inner_product(lam, lam) >= lam.weight
        assert (inner_product(lam, lam) == lam.weight) == (lam.length == 1)


# ---------------------------------------------------------------------------
# q-products and weights


def test_q_pochhammer_values():
    assert q_pochhammer(0) == PolyQ([1])
    assert q_pochhammer(1) == PolyQ([1, -1])
    assert q_pochhammer(2) == PolyQ([1, -1, -1, 1])


def test_pochhammer_product_examples():
    assert pochhammer_product(Partition((1, 1))) == q_pochhammer(2)
    assert pochhammer_product(Partition((2, 1))) == PolyQ([1, -1]) * PolyQ([1, -1])
    assert pochhammer_product(Partition()) == PolyQ([1])


def test_pochhammer_product_degree_formula():
    for lam in all_partitions_up_to(8):
        expected = sum(m * (m + 1) // 2 for m in lam.exponential_form().values())
        assert pochhammer_product(lam).degree() == expected


def test_centralizer_order_of_scalar_types_is_gl_order():
    # the type with n parts equal to 1 centralizes to the full group
    for n in range(1, 5):
        lam = Partition((1,) * n)
        poly = centralizer_order(lam)
        for q in (2, 3, 4):
            expected = 1
            for i in range(n):
                expected *= q ** n - q ** i
            assert poly.evaluate(q) == expected


def test_orbit_weight_examples():
    one = PolyQ([1])
    qm1 = PolyQ([-1, 1])
    assert orbit_weight(Partition((1,)), 1) == RF(one, qm1)
    assert orbit_weight(Partition((1,)), 3) == RF(one, qm1)
    assert orbit_weight(Partition((2,)), 1) == RF(one, qm1)
    expected = RF(PolyQ([0, 1]), qm1 * qm1 * PolyQ([1, 1]))
    assert orbit_weight(Partition((1, 1)), 1) == expected


def test_orbit_weight_rejects_bad_input():
    with pytest.raises(ValueError):
        orbit_weight(Partition(), 1)
    with pytest.raises(ValueError):
        orbit_weight(Partition((1,)), 0)


# ---------------------------------------------------------------------------
# number theory


def test_mobius_values():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_mobius_sum_over_divisors():
    # sum of mobius over divisors is the indicator of n == 1
    for n in range(1, 60):
        total = sum(mobius(d) for d in divisors(n))
        assert total == (1 if n == 1 else 0)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


def test_irreducible_count_closed_forms():
    assert monic_irreducible_count(1) == PolyQ([-1, 1])
    assert monic_irreducible_count(2) == PolyQ([0, Fraction(-1, 2), Fraction(1, 2)])


def test_irreducible_count_matches_enumeration():
    for q in (2, 3, 4):
        field = FieldSpec.of(q)
        for d in range(1, 5):
            expected = len(monic_irreducibles(field, d))
            assert monic_irreducible_count(d).evaluate(q) == expected
