from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from orbitnf.exactmath import PolyQ
from orbitnf.realization import (
    HermitianMatrix,
    PointBlock,
    PointSpec,
    build_point_spec,
    charpoly_rhs,
    factorization_check,
    lambda_polynomial,
    matrix_from_json,
    matrix_to_json,
    membership_check,
    moment_projection,
    point_spec_to_json,
    reduced_identity_check,
    render_numeric,
)
from orbitnf.pattern import validate_interlacing

from conftest import pairs


@pytest.fixture
def small():
    return validate_interlacing([2, 1, 0], [1, 1])


def test_small_spec(small):
    spec = build_point_spec(small)
    assert spec.c == 1
    assert spec.blocks == (PointBlock(Fraction(1), 2, Fraction(1)),)
    assert charpoly_rhs(spec) == PolyQ([0, 2, -3, 1])
    assert membership_check(small, spec)
    assert render_numeric(spec).entries.tolist() == [[1, 1, 0], [1, 1, 0], [0, 0, 1]]


def test_perturbed_norm_fails(small, worked):
    spec = build_point_spec(small)
    assert not membership_check(small, spec.with_norm(Fraction(1), Fraction(2)))
    spec = build_point_spec(worked)
    assert membership_check(worked, spec)
    assert not membership_check(worked, spec.with_norm(Fraction(4), Fraction(16, 3) + Fraction(1, 10**9)))


def test_worked_spec(worked):
    spec = build_point_spec(worked)
    assert spec.c == 3 and spec.order == 8
    assert {b.mu_value: b.z_norm_squared for b in spec.blocks} == {
        6: 0, 5: 0, 4: Fraction(16, 3), 3: 0, 1: Fraction(5, 3)
    }
    assert reduced_identity_check(worked)
    assert factorization_check(worked)
    js = point_spec_to_json(spec)
    assert js["blocks"][2] == {"mu_value": "4", "size": 1, "z_norm_squared": "16/3"}


def test_negative_norm_rejected():
    with pytest.raises(ValueError):
        PointSpec(Fraction(0), (PointBlock(Fraction(1), 1, Fraction(-1)),))


def test_hermitian_matrix():
    with pytest.raises(ValueError):
        HermitianMatrix([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        HermitianMatrix([[0, 1, 2]])
    m = HermitianMatrix([[1, 1j], [-1j, 2]])
    assert m.order == 2
    with pytest.raises(ValueError):
        m.entries[0, 0] = 5
    back = matrix_from_json(matrix_to_json(m))
    assert np.array_equal(back.entries, m.entries)


def test_moment_projection(worked):
    spec = build_point_spec(worked)
    proj = moment_projection(render_numeric(spec))
    assert np.array_equal(proj.entries, np.diag([float(v) for v in worked.mu]).astype(complex))
    with pytest.raises(ValueError):
        moment_projection(HermitianMatrix([[1.0]]))


@settings(max_examples=300, deadline=None)
@given(pairs(max_n=10))
def test_exact_identities(pair):
    spec = build_point_spec(pair)
    assert membership_check(pair, spec)
    assert reduced_identity_check(pair)
    assert factorization_check(pair)


@settings(max_examples=150, deadline=None)
@given(pairs(max_n=8))
def test_charpoly_numeric_oracle(pair):
    # numpy's characteristic polynomial of the rendered matrix vs the exact one
    spec = build_point_spec(pair)
    m = render_numeric(spec).entries
    numeric = np.poly(m).real[::-1]
    exact = np.array([float(c) for c in charpoly_rhs(spec).coeffs])
    scale = 1 + max(abs(float(v)) for v in pair.lam)
    assert np.allclose(numeric, exact, rtol=1e-8, atol=1e-8 * scale ** len(pair.lam))
    assert lambda_polynomial(pair).degree == pair.n + 1
