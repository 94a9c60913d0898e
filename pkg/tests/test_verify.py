"""Certification checks: positivity, the unique diagonal bijection, the
triangular order, fixed rows, and report determinism."""
import json

import pytest

from fourierbasis.groups import build_standard
from fourierbasis.mspace import MVector, mspace
from fourierbasis.verify import (
    basis_rows,
    check_bipositivity,
    check_fixed_points,
    check_iota,
    check_linear_independence,
    check_triangular,
    verify_group,
)

GROUPS = ["S1", "S2", "S3", "S4", "S5", "V1", "V2", "V3", "S2xS2", "S3xS2"]


def space_of(descriptor):
    return mspace(build_standard(descriptor))


def vectors_of(descriptor, **kw):
    return [v for _, v in basis_rows(descriptor, **kw)]


def unit_vectors(space):
    return [MVector.from_terms(space, [(1, cls, ch)]) for cls, ch in
            (space.pair_label(pos) for pos in range(space.size))]


# -- bipositivity --------------------------------------------------------------


def test_bipositivity_passes_for_s2_and_v2():
    assert check_bipositivity(vectors_of("S2")).passed
    assert check_bipositivity(vectors_of("V2")).passed


def test_bipositivity_fails_with_witness():
    sp = space_of("S2")
    bad = MVector.from_terms(sp, [(1, "1", "1"), (-1, "1", "eps")])
    result = check_bipositivity([bad])
    assert not result.passed
    assert "(1,eps)" in result.witness and "-1" in result.witness


# -- the diagonal bijection ----------------------------------------------------


def test_iota_s2_sends_g2_eps_to_the_full_seed_row():
    sp = space_of("S2")
    vectors = vectors_of("S2")
    result, iota = check_iota(sp, vectors)
    assert result.passed
    row = vectors[iota[sp.find("g2", "eps")]]
    assert row == MVector.from_terms(sp, [(1, "g2", "eps"), (1, "1", "1")])


def test_iota_s3_matches_the_lifted_row():
    sp = space_of("S3")
    vectors = vectors_of("S3")
    result, iota = check_iota(sp, vectors)
    assert result.passed
    row = vectors[iota[sp.find("1", "eps")]]
    assert row == MVector.from_terms(
        sp, [(1, "1", "eps"), (2, "1", "r"), (1, "1", "1")]
    )


def test_iota_identity_on_unit_vectors():
    sp = space_of("S3")
    result, iota = check_iota(sp, unit_vectors(sp))
    assert result.passed
    assert iota == list(range(sp.size))


def test_iota_fails_when_a_pair_is_uncovered():
    sp = space_of("S2")
    vectors = [
        MVector.from_terms(sp, [(1, "1", "1")]),
        MVector.from_terms(sp, [(1, "1", "eps")]),
        MVector.from_terms(sp, [(1, "g2", "1")]),
        MVector.from_terms(sp, [(1, "g2", "1"), (1, "1", "1")]),
    ]
    result, iota = check_iota(sp, vectors)
    assert not result.passed and iota is None
    assert "(g2,eps)" in result.witness


def test_iota_fails_when_two_matchings_exist():
    sp = space_of("S2")
    doubled = MVector.from_terms(sp, [(1, "1", "1"), (1, "1", "eps")])
    vectors = [
        doubled,
        doubled,
        MVector.from_terms(sp, [(1, "g2", "1")]),
        MVector.from_terms(sp, [(1, "g2", "eps")]),
    ]
    result, iota = check_iota(sp, vectors)
    assert not result.passed and iota is None
    assert "alternating cycle" in result.witness


# -- triangularity -------------------------------------------------------------


def test_triangular_s2_order():
    sp = space_of("S2")
    vectors = vectors_of("S2")
    _, iota = check_iota(sp, vectors)
    result, order = check_triangular(sp, vectors, iota)
    assert result.passed
    assert order == [
        sp.find("g2", "eps"),
        sp.find("1", "eps"),
        sp.find("g2", "1"),
        sp.find("1", "1"),
    ]
    # every row is supported on its own position and later ones only
    rank = {pos: i for i, pos in enumerate(order)}
    for pos in range(sp.size):
        row = vectors[iota[pos]]
        assert all(rank[p] >= rank[pos] for p in row.coeffs)


def test_triangular_s5_full_size():
    sp = space_of("S5")
    vectors = vectors_of("S5")
    _, iota = check_iota(sp, vectors)
    result, order = check_triangular(sp, vectors, iota)
    assert result.passed
    assert len(order) == 39 == sp.size
    rank = {pos: i for i, pos in enumerate(order)}
    for pos in range(sp.size):
        row = vectors[iota[pos]]
        assert row.coeffs[pos].as_fraction() == 1
        for p, c in row.coeffs.items():
            assert rank[p] >= rank[pos]
            assert c.is_rational() and c.as_fraction().denominator == 1


def test_triangular_trivial_on_unit_vectors():
    sp = space_of("S4")
    vectors = unit_vectors(sp)
    _, iota = check_iota(sp, vectors)
    result, order = check_triangular(sp, vectors, iota)
    assert result.passed and len(order) == sp.size


def test_triangular_rejects_scaled_diagonal():
    sp = space_of("S2")
    vectors = unit_vectors(sp)
    vectors[0] = MVector.from_terms(sp, [(1, "1", "1"), (1, "1", "eps")])
    vectors[1] = MVector.from_terms(sp, [(2, "1", "eps")])
    _, iota = check_iota(sp, vectors)
    result, _ = check_triangular(sp, vectors, iota)
    assert not result.passed
    assert "diagonal" in result.witness and "2" in result.witness


# -- fixed rows ----------------------------------------------------------------


def test_fixed_points_s5_standard():
    sp = space_of("S5")
    vectors = vectors_of("S5")
    _, iota = check_iota(sp, vectors)
    result, fixed = check_fixed_points(sp, vectors, iota, "S5")
    assert result.passed
    assert ("g5", "zeta") not in fixed
    assert {("g5", "zeta^2"), ("g5", "zeta^3"), ("g5", "zeta^4")} <= set(fixed)


def test_fixed_points_fails_on_the_primed_rows():
    sp = space_of("S5")
    vectors = vectors_of("S5", variant="primed")
    _, iota = check_iota(sp, vectors)
    result, _ = check_fixed_points(sp, vectors, iota, "S5")
    assert not result.passed
    assert "not fixed" in result.witness


@pytest.mark.parametrize("descriptor", ["S2", "S3", "S4"])
def test_fixed_points_lower_groups(descriptor):
    sp = space_of(descriptor)
    vectors = vectors_of(descriptor)
    _, iota = check_iota(sp, vectors)
    result, _ = check_fixed_points(sp, vectors, iota, descriptor)
    assert result.passed


# -- whole-group reports -------------------------------------------------------


@pytest.mark.parametrize("descriptor", GROUPS)
def test_verify_group_passes(descriptor):
    report = verify_group(descriptor)
    assert report.passed, [c.witness for c in report.checks if not c.passed]
    assert [c.name for c in report.checks] == [
        "linear_independence",
        "bipositivity",
        "iota_unique",
        "unitriangular",
        "fixed_points",
    ]
    assert len(report.iota) == len(report.order) == space_of(descriptor).size


@pytest.mark.parametrize("descriptor", GROUPS)
def test_linear_independence(descriptor):
    sp = space_of(descriptor)
    assert check_linear_independence(sp, vectors_of(descriptor)).passed


def test_dependent_rows_rejected():
    sp = space_of("S2")
    vectors = unit_vectors(sp)
    vectors[3] = vectors[0] + vectors[1]
    vectors[2] = vectors[0]
    result = check_linear_independence(sp, vectors)
    assert not result.passed and "dependent" in result.witness


def test_diagonal_coefficient_is_one_everywhere():
    for descriptor in GROUPS:
        sp = space_of(descriptor)
        vectors = vectors_of(descriptor)
        _, iota = check_iota(sp, vectors)
        for pos in range(sp.size):
            c = vectors[iota[pos]].coeffs[pos]
            assert c.is_rational() and c.as_fraction() == 1


def test_report_bytes_stable():
    a = verify_group("S5").to_json()
    b = verify_group("S5").to_json()
    assert a == b
    decoded = json.loads(a)
    assert decoded["passed"] is True
    assert decoded["group"] == "S5"
    assert len(decoded["fixed"]) == 24


def test_primed_variant_report_passes():
    report = verify_group("S5", variant="primed")
    assert report.passed
    zeta_fixed = [p for p in report.fixed if p[0] == "g5" and p[1] != "1"]
    assert zeta_fixed == []
