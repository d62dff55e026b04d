from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from infgrass.exterior import (DUAL, PRIMAL, ExteriorElement, Stage, canonicalize, det_pairing,
                               interior, map_beta, map_eta, map_theta, map_xi, mu, mu_inverse,
                               pairing, sort_sign, wedge, wedge_covectors, wedge_index_cmp)
from infgrass.scalars import GF, QQ, Field

from oracles import inversion_parity, leibniz_det, order_value

labels = st.integers(-30, 30).filter(lambda i: i != 0)


def _x(stage, *idx, field=QQ, side=PRIMAL):
    return ExteriorElement.basis_element(stage, idx, side, field)


def _random_element(stage, degree, field, rng, side=DUAL, density=0.6):
    coeffs = {k: field.random(rng) for k in stage.basis(degree) if rng.random() < density}
    return ExteriorElement(stage, degree, coeffs, side, field)


# -- labels and order --------------------------------------------------------


def test_mu_examples():
    assert mu(-2) == 4
    assert mu(1) == 1
    assert mu(5) == 9


def test_mu_rejects_zero():
    with pytest.raises(ValueError):
        mu(0)


def test_mu_is_a_bijection_onto_positive_integers():
    window = range(-40, 41)
    images = sorted(mu(i) for i in window if i)
    assert images == list(range(1, 81))
    for k in range(1, 81):
        assert mu(mu_inverse(k)) == k


@given(labels)
def test_mu_matches_two_case_rule(i):
    assert mu(i) == order_value(i)


def test_wedge_index_cmp_examples():
    assert wedge_index_cmp((1, -1), (1, 2)) < 0
    assert wedge_index_cmp((1, 2), (1, 2)) == 0
    assert wedge_index_cmp((-1, 2), (1, -1)) > 0


def test_wedge_index_cmp_degree_mismatch():
    with pytest.raises(ValueError):
        wedge_index_cmp((1,), (1, 2))


def test_wedge_order_is_total_at_a_stage():
    basis = Stage(2, 3).basis(3)
    for a, b in itertools.combinations(basis, 2):
        assert wedge_index_cmp(a, b) == -wedge_index_cmp(b, a) != 0


def test_canonicalize_examples():
    assert canonicalize((1, 2)) == ((1, 2), 1)
    assert canonicalize((2, 1)) == ((1, 2), -1)
    assert canonicalize((1, 1)) is None


@given(st.lists(labels, min_size=0, max_size=7, unique=True))
def test_sort_sign_matches_inversion_parity(seq):
    assert sort_sign([mu(i) for i in seq]) == inversion_parity([order_value(i) for i in seq])
    key, sign = canonicalize(seq)
    assert [mu(i) for i in key] == sorted(mu(i) for i in seq)
    assert sign == inversion_parity([order_value(i) for i in seq])


def test_stage_parse_and_symbols():
    st_ = Stage.parse("2,3")
    assert st_ == Stage(2, 3) and str(st_) == "2,3"
    assert st_.symbols == (1, -1, 2, -2, 3)
    assert Stage(1, 2) <= Stage(2, 2) and not Stage(2, 1) <= Stage(1, 2)
    with pytest.raises(ValueError):
        Stage.parse("2;3")


# -- products ----------------------------------------------------------------


def test_wedge_examples():
    s = Stage(1, 2)
    assert wedge(_x(s, 1), _x(s, 1)).is_zero()
    assert wedge(_x(s, 2), _x(s, 1)) == _x(s, 1, 2).scale(-1)
    assert wedge(_x(s, -1), _x(s, 1)) == _x(s, 1, -1).scale(-1)


def test_wedge_associative_and_graded_commutative():
    rng = random.Random(1)
    s = Stage(2, 2)
    F = GF(101)
    for _ in range(20):
        a, b, c = (_random_element(s, d, F, rng) for d in (1, 1, 2))
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
        assert wedge(a, b) == -wedge(b, a)
        assert wedge(c, a) == wedge(a, c)


def test_pairing_examples():
    s = Stage(1, 2)
    phi = wedge(_x(s, 1, side=DUAL), _x(s, 2, side=DUAL))
    assert pairing(phi, (1, 2)) == 1
    assert pairing(phi, (2, 1)) == -1
    f = _x(s, 1, side=DUAL) + _x(s, -1, side=DUAL)
    assert pairing(wedge(f, _x(s, 2, side=DUAL)), (-1, 2)) == 1


def test_pairing_errors():
    s = Stage(1, 2)
    with pytest.raises(ValueError):
        pairing(_x(s, 1, side=DUAL), (1, 2))
    with pytest.raises(ValueError):
        pairing(_x(s, 1), (1,))


@settings(max_examples=40)
@given(st.integers(1, 3), st.sampled_from([0, 2, 101]), st.integers(0, 10**6))
def test_wedge_of_covectors_pairs_as_determinant(d, p, seed):
    rng = random.Random(seed)
    F = Field(p)
    s = Stage(2, 2)
    covs = [{i: F.random(rng) for i in s.symbols} for _ in range(d)]
    phi = wedge_covectors(s, covs, F)
    for word in itertools.permutations(s.symbols, d):
        expect = leibniz_det([[f[j] for j in word] for f in covs], p)
        assert pairing(phi, word) == expect
        assert det_pairing(covs, word, F) == expect


def test_interior_examples():
    s = Stage(1, 3)
    d = lambda *i: _x(s, *i, side=DUAL)  # noqa: E731
    assert interior(2, d(2)) == ExteriorElement(s, 0, {(): 1})
    assert interior(3, d(1, 2)).is_zero()
    assert interior(2, d(1, 2)) == -d(1)


def test_interior_is_evaluation_in_first_slot():
    rng = random.Random(3)
    s = Stage(2, 2)
    F = QQ
    for _ in range(10):
        w = _random_element(s, 3, F, rng)
        for i in s.symbols:
            iw = interior(i, w)
            for rest in itertools.combinations(s.symbols, 2):
                assert pairing(iw, rest) == pairing(w, (i,) + rest)


# -- transition maps ---------------------------------------------------------


def test_eta_examples():
    assert map_eta(_x(Stage(1, 2), 1, 2)) == _x(Stage(2, 2), 1, 2)
    assert map_eta(ExteriorElement.zero(Stage(1, 2), 2, PRIMAL)).is_zero()
    assert map_eta(_x(Stage(1, 2), -1, 1)).stage == Stage(2, 2)


def test_beta_examples():
    assert map_beta(_x(Stage(1, 2), 1, 2)) == _x(Stage(1, 3), 1, 2, 3)
    assert map_beta(ExteriorElement.zero(Stage(1, 2), 2, PRIMAL)).is_zero()
    image = map_beta(_x(Stage(3, 1), 1, -3))
    assert image.coeffs == {(1, 2, -3): -1}


def test_xi_example():
    w = ExteriorElement(Stage(2, 2), 2, {(1, 2): 1, (1, -2): 5})
    assert map_xi(w) == ExteriorElement(Stage(1, 2), 2, {(1, 2): 1})
    assert map_xi(ExteriorElement.zero(Stage(2, 2), 2)).is_zero()


def test_theta_examples():
    s = Stage(1, 3)
    w = _x(s, 1, 2, 3, side=DUAL)
    assert map_theta(w) == ExteriorElement(Stage(1, 2), 2, {(1, 2): 1})
    assert map_theta(_x(s, -1, 1, 2, side=DUAL)).is_zero()


def test_map_preconditions():
    with pytest.raises(ValueError):
        map_xi(ExteriorElement.zero(Stage(1, 2), 2))
    with pytest.raises(ValueError):
        map_theta(ExteriorElement.zero(Stage(1, 1), 1))
    with pytest.raises(ValueError):
        map_beta(ExteriorElement.zero(Stage(1, 2), 2, DUAL))


@pytest.mark.parametrize("field", [GF(2), GF(101), QQ], ids=str)
def test_xi_adjoint_to_eta(field):
    rng = random.Random(5)
    src = Stage(2, 3)
    for _ in range(30):
        w = _random_element(src, 3, field, rng)
        u = _random_element(Stage(1, 3), 3, field, rng, side=PRIMAL)
        assert pairing(map_xi(w), u) == pairing(w, map_eta(u))


@pytest.mark.parametrize("field", [GF(2), GF(101), QQ], ids=str)
def test_theta_adjoint_to_beta_up_to_sign(field):
    rng = random.Random(6)
    for p in (1, 2, 3):
        src = Stage(2, p + 1)
        for _ in range(15):
            w = _random_element(src, p + 1, field, rng)
            u = _random_element(Stage(2, p), p, field, rng, side=PRIMAL)
            lhs = pairing(map_theta(w), u)
            rhs = pairing(w, map_beta(u))
            assert lhs == (rhs if p % 2 == 0 else field.neg(rhs))


@pytest.mark.parametrize("src,dst,fn", [
    (Stage(2, 3), Stage(2, 4), map_beta),
    (Stage(2, 3), Stage(3, 3), map_eta),
], ids=["beta", "eta"])
def test_transition_maps_preserve_the_order(src, dst, fn):
    basis = src.basis(src.p)
    images = {}
    for S in basis:
        img = fn(_x(src, *S))
        (key, coeff), = img.coeffs.items()
        assert abs(coeff) == 1 and img.stage == dst
        images[S] = key
    for a, b in itertools.product(basis, repeat=2):
        assert wedge_index_cmp(a, b) == wedge_index_cmp(images[a], images[b])


def test_to_json_roundtrip_shape():
    w = ExteriorElement(Stage(1, 2), 2, {(1, 2): 3}, DUAL, GF(5))
    assert w.to_json() == [{"indexList": [1, 2], "coeff": "3"}]
