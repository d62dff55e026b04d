from __future__ import annotations

import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from infgrass.exterior import DUAL, ExteriorElement, Stage, pairing
from infgrass.grassmann import (AlphaMatrix, ConePoint, big_cell_point, enumerate_cone_points,
                                enumerate_vectors, is_cone_point, lemma5_coordinate, lemma5_sign,
                                load_matrix, pluecker_from_matrix, pluecker_relations,
                                preimage_coverage, random_cone_point, random_matrix,
                                relation_residuals, shuffle_relations, theta_tilde, xi_tilde)
from infgrass.linalg import rank
from infgrass.scalars import GF, QQ, Field

from oracles import minor_coordinates, pluecker_quadric_count

FIELDS = [GF(2), GF(3), GF(101), QQ]


def test_identity_rows_give_base_point():
    s = Stage(1, 2)
    pt = pluecker_from_matrix([[1, 0, 0], [0, 0, 1]], s, QQ)  # columns 1, -1, 2
    assert pt.coeffs == {(1, 2): 1}
    assert isinstance(pt, ConePoint)


def test_zero_matrix_gives_zero_point():
    assert pluecker_from_matrix([[0, 0, 0], [0, 0, 0]], Stage(1, 2)).is_zero()


def test_shifted_rows_match_big_cell():
    a, b = 3, 5
    s = Stage(1, 2)
    # x_1* + a x_{-1}*, x_2* + b x_{-1}* with columns (1, -1, 2)
    pt = pluecker_from_matrix([[1, a, 0], [0, b, 1]], s, QQ)
    assert pt == big_cell_point(AlphaMatrix(s, ((a,), (b,)), QQ))


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_minors_match_leibniz_oracle(field):
    rng = random.Random(11)
    for s in (Stage(1, 2), Stage(2, 2), Stage(2, 3)):
        for _ in range(5):
            M = random_matrix(s, field, rng)
            pt = pluecker_from_matrix(M, s, field, check=False)
            assert pt.coeffs == minor_coordinates(M, s.symbols, s.p, field.modulus)


def test_explicit_columns_permute_the_reading():
    s = Stage(1, 2)
    pt = pluecker_from_matrix([[1, 0, 1], [0, 1, 1]], s, GF(2), columns=[-1, 1, 2])
    assert set(pt.coeffs) == {(1, -1), (1, 2), (-1, 2)}
    with pytest.raises(ValueError):
        pluecker_from_matrix([[1, 0, 1]], s, GF(2), columns=[-1, 1, 3])


# -- relations ---------------------------------------------------------------


def test_projective_space_has_no_quadrics():
    assert pluecker_relations(Stage(3, 1)) == []


def test_four_symbols_degree_two_single_quadric():
    rels = pluecker_relations(Stage(1, 3), QQ, degree=2)
    assert len(rels) == 1
    (rel,) = rels
    assert len(rel.terms) == 3


def test_quadric_span_matches_representation_theory():
    s = Stage(3, 5)
    rels = shuffle_relations(s)
    assert len(rels) == 700
    # columns indexed by unordered pairs of 5-sets
    index = {}
    rows = []
    for rel in rels:
        row = {}
        for pr, c in rel:
            row[index.setdefault(pr, len(index))] = c
        rows.append(row)
    dense = [[r.get(k, 0) for k in range(len(index))] for r in rows]
    assert rank(GF(101), dense) == pluecker_quadric_count(5, 8) == 420


@pytest.mark.parametrize("stage", [Stage(1, 3), Stage(2, 2), Stage(2, 3)], ids=str)
def test_quadric_span_dimension_small(stage):
    rows = []
    index = {}
    for rel in shuffle_relations(stage):
        row = {}
        for pr, c in rel:
            row[index.setdefault(pr, len(index))] = c
        rows.append(row)
    dense = [[r.get(k, 0) for k in range(len(index))] for r in rows]
    assert rank(QQ, dense) == pluecker_quadric_count(stage.p, stage.dim)


@pytest.mark.parametrize("field", [GF(2), GF(101), QQ], ids=str)
def test_relations_vanish_on_matrix_points(field):
    rng = random.Random(21)
    for s in (Stage(1, 3), Stage(2, 2), Stage(2, 3), Stage(3, 3)):
        rels = pluecker_relations(s, field)
        for _ in range(25):
            pt = random_cone_point(s, field, rng)
            assert all(r.evaluate(pt.coeffs) == 0 for r in rels)


def test_is_cone_point_examples():
    s = Stage(1, 3)
    assert is_cone_point(ExteriorElement.zero(s, 3))
    bad = ExteriorElement(s, 2, {(1, 2): 1, (-1, 3): 1}, DUAL, QQ)
    assert not is_cone_point(bad)
    assert is_cone_point({(1, 2): 1}, stage=s, field=QQ)
    with pytest.raises(ValueError):
        is_cone_point({(1, 2): 1})


def test_cone_point_validation():
    s = Stage(1, 3)
    with pytest.raises(ValueError):
        ConePoint(s, {(1, 2): 1, (-1, 3): 1}, QQ, degree=2, validate=True)


def test_exhaustive_decomposability_at_four_symbols():
    s, F = Stage(2, 2), GF(2)
    decomposable = enumerate_cone_points(s, F)
    # 35 planes in GF(2)^4 plus the origin
    assert len(decomposable) == 36
    accepted = {tuple(sorted(v.coeffs.items())) for v in enumerate_vectors(s, F) if is_cone_point(v)}
    assert accepted == set(decomposable)


# -- big cell ----------------------------------------------------------------


def test_big_cell_base_point():
    for s in (Stage(1, 2), Stage(2, 3)):
        pt = big_cell_point(AlphaMatrix.zero(s))
        assert pt.coeffs == {tuple(range(1, s.p + 1)): 1}


def test_big_cell_at_stage_one_two():
    s = Stage(1, 2)
    a1, a2 = 7, 11
    pt = big_cell_point(AlphaMatrix(s, ((a1,), (a2,))))
    assert pt[(1, 2)] == 1
    assert pt[(1, -1)] == a2
    assert pt[(-1, 2)] == a1


def test_lemma5_examples():
    s = Stage(1, 2)
    alpha = AlphaMatrix(s, ((4,), (9,)))
    assert lemma5_coordinate(alpha, (), (1, 2)) == 1
    assert lemma5_coordinate(alpha, (1,), (1,)) == -9
    s2 = Stage(2, 2)
    al = AlphaMatrix(s2, ((1, 2), (3, 5)))
    # q = p: det(alpha_{m_j}^{n_i}) over all rows, sign +1
    assert lemma5_sign((), 2) == 1
    assert lemma5_coordinate(al, (1, 2), ()) == 1 * 5 - 3 * 2


def test_lemma5_rejects_bad_splits():
    al = AlphaMatrix.zero(Stage(2, 2))
    for neg, pos in [((1,), (1, 2)), ((2, 1), ()), ((3,), (1,)), ((1,), (3,))]:
        with pytest.raises(ValueError):
            lemma5_coordinate(al, neg, pos)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.sampled_from([2, 101, 0]), st.integers(0, 10**6))
def test_lemma5_matches_pairing(n, p, modulus, seed):
    F = Field(modulus)
    s = Stage(n, p)
    alpha = AlphaMatrix.random(s, F, random.Random(seed))
    pt = big_cell_point(alpha)
    for q in range(0, min(n, p) + 1):
        for neg in itertools.combinations(range(1, n + 1), q):
            for pos in itertools.combinations(range(1, p + 1), p - q):
                word = tuple(-j for j in neg) + pos
                assert lemma5_coordinate(alpha, neg, pos) == pairing(pt, word)


# -- restriction maps on cone points -----------------------------------------


def test_theta_tilde_on_base_point():
    s = Stage(2, 3)
    base = big_cell_point(AlphaMatrix.zero(s))
    img = theta_tilde(base)
    assert img.stage == Stage(2, 2)
    assert set(img.coeffs) == {(1, 2)} and abs(img.coeffs[(1, 2)]) == 1


def test_theta_tilde_kills_points_avoiding_top_label():
    s = Stage(2, 3)
    pt = ConePoint(s, {(1, -1, 2): 1}, QQ)
    assert theta_tilde(pt).is_zero()


def test_xi_tilde_examples():
    s = Stage(2, 2)
    base = big_cell_point(AlphaMatrix.zero(s))
    assert xi_tilde(base) == big_cell_point(AlphaMatrix.zero(Stage(1, 2)))
    assert xi_tilde(ConePoint(s, {(1, -2): 1}, QQ)).is_zero()


def test_tilde_maps_reject_non_cone_points():
    bad = ExteriorElement(Stage(2, 2), 2, {(1, 2): 1, (-1, -2): 1}, DUAL, QQ)
    with pytest.raises(ValueError):
        theta_tilde(bad)
    with pytest.raises(ValueError):
        xi_tilde(bad)


@pytest.mark.parametrize("field", [GF(2), GF(101), QQ], ids=str)
def test_tilde_maps_land_on_the_cone(field):
    rng = random.Random(31)
    for _ in range(100):
        pt = random_cone_point(Stage(2, 3), field, rng)
        assert is_cone_point(theta_tilde(pt))
        assert is_cone_point(xi_tilde(pt))


@pytest.mark.parametrize("field", [GF(2), GF(101), QQ], ids=str)
def test_restriction_square_commutes(field):
    rng = random.Random(41)
    for s in (Stage(2, 2), Stage(2, 3), Stage(3, 2), Stage(3, 3)):
        for _ in range(30):
            w = random_cone_point(s, field, rng)
            assert xi_tilde(theta_tilde(w)) == theta_tilde(xi_tilde(w))


def test_gf2_surjectivity_onto_stage_one_two():
    cov = preimage_coverage(Stage(1, 2), GF(2))
    # 7 lines of GF(2)^3 plus the origin
    assert cov["targetPoints"] == 8
    assert cov["theta"]["missing"] == 0 and cov["xi"]["missing"] == 0


def test_residuals_are_field_valued():
    pt = random_cone_point(Stage(2, 2), GF(3), random.Random(0))
    assert all(r == 0 for r in relation_residuals(pt))


# -- matrix ingestion --------------------------------------------------------


def test_load_matrix_csv_and_json(tmp_path):
    csv_path = tmp_path / "m.csv"
    csv_path.write_text("1,0,0\n0,0,1\n")
    data = load_matrix(csv_path, QQ)
    assert pluecker_from_matrix(data["rows"], Stage(1, 2), QQ).coeffs == {(1, 2): 1}
    json_path = tmp_path / "m.json"
    json_path.write_text(json.dumps({"rows": [["1/2", 1]], "stage": [1, 1], "columns": [-1, 1]}))
    data = load_matrix(json_path, GF(5))
    assert data["stage"] == Stage(1, 1) and data["columns"] == [-1, 1]
    assert data["rows"] == [[3, 1]]
