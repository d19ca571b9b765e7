import random

import pytest

from nilorb import pipeline
from nilorb.fforacle import (
    ABSOLUTELY_INDECOMPOSABLE,
    DECOMPOSABLE,
    INDECOMPOSABLE,
    FieldSpec,
    SizeGuardError,
    block_jordan_matrix,
    burnside_orbit_count,
    classify_orbit,
    classify_tuple,
    commutant_basis,
    companion_matrix,
    identity_matrix,
    indecomposability_counts,
    invertible_matrices,
    is_irreducible,
    jordan_type_matrix,
    mat_inverse,
    mat_mul,
    monic_irreducibles,
    nilpotent_commutant_count,
    nilpotent_matrices,
    orbits,
    random_orbit_member,
    zero_matrix,
)
from nilorb.partitions import Partition, inner_product, partition_count

F2 = FieldSpec.of(2)
F3 = FieldSpec.of(3)


# ---------------------------------------------------------------------------
# fields


def test_all_supported_fields_construct():
    for q in (2, 3, 4, 5, 7, 8, 9):
        field = FieldSpec.of(q)
        assert field.q == q


def test_unsupported_fields_rejected():
    with pytest.raises(ValueError):
        FieldSpec.of(6)
    with pytest.raises(SizeGuardError):
        FieldSpec.of(16)
    with pytest.raises(SizeGuardError):
        FieldSpec.of(11)


def test_extension_field_arithmetic():
    f4 = FieldSpec.of(4)
    # element 2 encodes x; x * x = x + 1 under x^2 + x + 1
    assert f4.mul(2, 2) == 3
    f9 = FieldSpec.of(9)
    # element 3 encodes x; x * x = -1 = 2 under x^2 + 1
    assert f9.mul(3, 3) == 2
    f8 = FieldSpec.of(8)
    # element 2 encodes x; x * x^2 = x + 1 under x^3 + x + 1
    assert f8.mul(2, 4) == 3


def test_inverses():
    for q in (2, 3, 4, 5, 7, 8, 9):
        field = FieldSpec.of(q)
        for a in range(1, q):
            assert field.mul(a, field.inv(a)) == 1


# ---------------------------------------------------------------------------
# exhaustive enumerations


def test_nilpotent_two_by_two_over_f2():
    got = set(nilpotent_matrices(F2, 2))
    assert got == {
        ((0, 0), (0, 0)),
        ((0, 1), (0, 0)),
        ((0, 0), (1, 0)),
        ((1, 1), (1, 1)),
    }


def test_nilpotent_counts_follow_closed_form():
    assert len(nilpotent_matrices(F2, 1)) == 1
    assert len(nilpotent_matrices(F2, 3)) == 64
    assert len(nilpotent_matrices(F3, 3)) == 729
    for q in (4, 5, 7, 8, 9):
        assert len(nilpotent_matrices(FieldSpec.of(q), 2)) == q * q


def test_invertible_counts():
    assert len(invertible_matrices(F2, 2)) == 6
    assert len(invertible_matrices(F2, 3)) == 168
    assert len(invertible_matrices(F3, 1)) == 2
    assert len(invertible_matrices(F3, 2)) == 48
    assert len(invertible_matrices(FieldSpec.of(4), 2)) == 180


def test_size_guards():
    with pytest.raises(SizeGuardError):
        nilpotent_matrices(F2, 4)
    with pytest.raises(SizeGuardError):
        nilpotent_matrices(FieldSpec.of(5), 3)
    with pytest.raises(SizeGuardError):
        orbits(F3, 3, 2)
    with pytest.raises(SizeGuardError):
        burnside_orbit_count(F2, 2, 4)


def test_mat_inverse():
    rng = random.Random(11)
    group = invertible_matrices(F3, 2)
    for _ in range(10):
        t = rng.choice(group)
        assert mat_mul(F3, t, mat_inverse(F3, t)) == identity_matrix(2)


# ---------------------------------------------------------------------------
# orbit counting


def test_burnside_examples():
    assert burnside_orbit_count(F2, 2, 1) == 2
    assert burnside_orbit_count(F2, 2, 2) == 5
    assert burnside_orbit_count(F3, 2, 2) == 7
    assert burnside_orbit_count(F2, 3, 1) == 3
    assert burnside_orbit_count(F2, 3, 2) == 37


def test_orbits_partition_the_tuple_space():
    recs = orbits(F2, 2, 2)
    assert len(recs) == 5
    assert sum(r.size for r in recs) == 16
    for r in recs:
        assert 6 % r.size == 0


def test_single_matrix_orbits_are_partition_classes():
    for n, field in ((2, F2), (3, F2), (2, F3)):
        assert len(orbits(field, n, 1)) == partition_count(n)


def test_burnside_equals_orbit_listing_everywhere_in_guard():
    cases = [(F2, 2), (F3, 2), (F2, 3)]
    for field, n in cases:
        for g in (1, 2, 3):
            assert burnside_orbit_count(field, n, g) == len(orbits(field, n, g))


def test_pipeline_counts_match_oracle_everywhere_in_guard():
    cases = [(F2, 2), (F3, 2), (F2, 3)]
    for field, n in cases:
        for g in (1, 2, 3):
            m_engine = int(pipeline.orbit_count(g, n).evaluate(field.q))
            i_engine = int(pipeline.indecomposable_count(g, n).evaluate(field.q))
            a_engine = int(pipeline.absolutely_indecomposable_count(g, n).evaluate(field.q))
            recs = orbits(field, n, g)
            i_oracle, a_oracle = indecomposability_counts(field, n, g)
            assert m_engine == len(recs)
            assert (i_engine, a_engine) == (i_oracle, a_oracle)


# ---------------------------------------------------------------------------
# commutants


def test_commutant_of_zero_tuple_is_everything():
    assert len(commutant_basis(F2, (zero_matrix(2),))) == 4
    assert len(commutant_basis(F3, (zero_matrix(3),))) == 9


def test_commutant_of_regular_nilpotent_block():
    j = block_jordan_matrix(F2, (0, 1), 2)
    assert j == ((0, 1), (0, 0))
    basis = commutant_basis(F2, (j,))
    assert len(basis) == 2
    # the span is exactly {aI + bJ}
    from nilorb.fforacle import mat_add

    span = set()
    for a in F2.elements:
        for b in F2.elements:
            m = zero_matrix(2)
            if a:
                m = mat_add(F2, m, basis[0])
            if b:
                m = mat_add(F2, m, basis[1])
            span.add(m)
    assert identity_matrix(2) in span
    assert j in span


def test_commutant_of_scalar_type():
    # two 1x1 blocks of x - 1: the identity matrix, commutant is everything
    j = jordan_type_matrix(F2, (1, 1), Partition((1, 1)))
    assert j == identity_matrix(2)
    assert len(commutant_basis(F2, (j,))) == 4


def test_commutant_dimension_is_self_inner_product():
    for field in (F2, F3):
        for weight in range(1, 5):
            for lam in _partitions(weight):
                j = jordan_type_matrix(field, (0, 1), lam)
                assert len(commutant_basis(field, (j,))) == inner_product(lam, lam)


def _partitions(n):
    from nilorb.partitions import partitions_of

    return partitions_of(n)


# ---------------------------------------------------------------------------
# nilpotent commutant counts


def test_nilpotent_commutant_examples():
    assert nilpotent_commutant_count(F2, (0, 1), Partition((2,))) == 2
    assert nilpotent_commutant_count(F2, (1, 1), Partition((1, 1))) == 4
    assert nilpotent_commutant_count(F2, (1, 1, 1), Partition((2,))) == 4


def test_nilpotent_commutant_linear_blocks():
    for field in (F2, F3):
        for f in ((0, 1), (1, 1)):  # x and x - (-1)
            for parts in ((1,), (2,), (1, 1), (2, 1), (3,)):
                lam = Partition(parts)
                expected = field.q ** (inner_product(lam, lam) - lam.length)
                assert nilpotent_commutant_count(field, f, lam) == expected


def test_nilpotent_commutant_quadratic_block():
    lam = Partition((1,))
    assert nilpotent_commutant_count(F2, (1, 1, 1), lam) == 1


def test_nilpotent_commutant_guards():
    with pytest.raises(SizeGuardError):
        nilpotent_commutant_count(FieldSpec.of(5), (0, 1), Partition((2,)))
    with pytest.raises(SizeGuardError):
        nilpotent_commutant_count(F2, (1, 1, 1), Partition((3,)))
    with pytest.raises(ValueError):
        nilpotent_commutant_count(F2, (1, 0, 1), Partition((1,)))  # x^2+1 reducible


# ---------------------------------------------------------------------------
# classification


def test_zero_tuple_is_decomposable():
    assert classify_tuple(F2, (zero_matrix(2), zero_matrix(2))) == DECOMPOSABLE
    assert classify_tuple(F2, (zero_matrix(3),)) == DECOMPOSABLE


def test_pair_classification_over_f2():
    recs = orbits(F2, 2, 2)
    labels = [classify_orbit(r, F2) for r in recs]
    assert labels.count(ABSOLUTELY_INDECOMPOSABLE) == 4
    assert labels.count(DECOMPOSABLE) == 1
    assert indecomposability_counts(F2, 2, 2) == (4, 4)


def test_triple_count_over_f2_n3():
    assert indecomposability_counts(F2, 3, 2) == (32, 32)


def test_single_matrix_classification():
    # only the full Jordan block is indecomposable
    assert indecomposability_counts(F2, 2, 1) == (1, 1)
    assert indecomposability_counts(F2, 3, 1) == (1, 1)


def test_classification_is_conjugation_invariant():
    rng = random.Random(4242)
    for recs, field, n in ((orbits(F2, 2, 2), F2, 2), (orbits(F3, 2, 2), F3, 2)):
        for rec in recs:
            expected = classify_orbit(rec, field)
            for _ in range(3):
                member = random_orbit_member(field, n, rec.representative, rng)
                assert classify_tuple(field, member) == expected


def test_orbit_records_expose_algebra_profile():
    recs = orbits(F2, 2, 2)
    zero_rec = next(r for r in recs if r.representative == (zero_matrix(2), zero_matrix(2)))
    assert zero_rec.endo_dim == 4
    assert not zero_rec.local
    assert zero_rec.residue_size is None
    assert zero_rec.size == 1


# ---------------------------------------------------------------------------
# polynomial utilities over the field


def test_companion_matrix_layout():
    c = companion_matrix(F2, (1, 1, 1))
    assert c == ((0, 1), (1, 1))


def test_block_jordan_quadratic():
    j = block_jordan_matrix(F2, (1, 1, 1), 2)
    assert j == (
        (0, 1, 1, 0),
        (1, 1, 0, 1),
        (0, 0, 0, 1),
        (0, 0, 1, 1),
    )


def test_irreducibility():
    assert is_irreducible(F2, (1, 1, 1))
    assert not is_irreducible(F2, (1, 0, 1))  # (x+1)^2 over GF(2)
    assert is_irreducible(F3, (1, 0, 1))
    assert monic_irreducibles(F2, 2) == [(1, 1, 1)]
    assert len(monic_irreducibles(F2, 3)) == 2
    assert len(monic_irreducibles(F2, 1)) == 1  # x excluded
