import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitnf.corpus import random_lambda
from orbitnf.pattern import BOTTOM, TOP, build_pattern, validate_interlacing
from orbitnf.polytope import (
    DOWN,
    UP,
    EnumerationBoundError,
    close_edge_set,
    close_tight_set,
    enumerate_faces,
    enumerate_faces_bruteforce,
    face_invariants,
    face_of,
    face_representative,
    is_subface,
    is_unlabelled_pattern,
    lattice_to_json,
)

from conftest import WORKED_LAMBDA, F

T = lambda i: (TOP, i)  # noqa: E731
B = lambda i: (BOTTOM, i)  # noqa: E731

BROKEN_EDGES = [
    (T(1), B(1)), (T(2), B(1)), (T(1), T(2)),
    (T(3), B(2)),
    (T(4), B(4)), (T(4), T(5)), (T(5), B(4)), (T(5), B(5)),
    (B(6), B(7)), (B(6), T(7)), (B(7), T(7)),
]


def test_square():
    lat = enumerate_faces([2, 1, 0])
    assert lat.f_vector() == (4, 4, 1)
    assert len(lat.order_relation) == 12  # 8 vertex-edge + 4 edge-square
    assert lat.maximal_face().tight_set == frozenset()
    assert sorted(f.representative_mu for f in lat.faces if f.dimension == 0) == sorted(
        [F(2, 1), F(2, 0), F(1, 1), F(1, 0)]
    )


def test_point_polytope():
    lat = enumerate_faces([1, 1])
    assert lat.f_vector() == (1,)
    assert lat.faces[0].tight_set == {(UP, 1), (DOWN, 1)}


def test_representatives():
    lat = enumerate_faces([2, 1, 0])
    assert lat.faces[lat.index([(DOWN, 1)])].representative_mu == F(1, Fraction(1, 2))
    assert lat.faces[lat.index([])].representative_mu == (Fraction(3, 2), Fraction(1, 2))
    assert lat.faces[lat.index([(UP, 1), (UP, 2)])].representative_mu == F(2, 1)
    with pytest.raises(KeyError):
        lat.index([(UP, 3)])


@pytest.mark.parametrize("n", range(1, 9))
def test_strict_lambda_vertex_count(n):
    lam = list(range(n, -1, -1))
    assert enumerate_faces(lam).f_vector()[0] == 2**n
    assert enumerate_faces(lam).f_vector()[-1] == 1


def test_worked_lambda():
    lat = enumerate_faces(WORKED_LAMBDA)
    assert lat.f_vector() == (32, 80, 80, 40, 10, 1)
    assert lat.maximal_face().dimension == 5


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 5))
def test_matches_bruteforce(seed, n):
    lam = random_lambda(random.Random(seed), n)
    lat = enumerate_faces(lam)
    assert {f.tight_set for f in lat.faces} == enumerate_faces_bruteforce(lam)
    assert len({f.tight_set for f in lat.faces}) == len(lat.faces)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 4))
def test_order_is_containment(seed, n):
    lam = random_lambda(random.Random(seed), n)
    lat = enumerate_faces(lam)
    covers = set(lat.order_relation)
    for a, fa in enumerate(lat.faces):
        for b, fb in enumerate(lat.faces):
            if (a, b) in covers:
                assert is_subface(fa, fb) and fa.dimension + 1 == fb.dimension
    # the transitive closure of covers is the full relation
    reach = {a: {a} for a in range(len(lat.faces))}
    for _ in lat.faces:
        for a, b in covers:
            reach[a] |= reach[b]
    for a, fa in enumerate(lat.faces):
        for b, fb in enumerate(lat.faces):
            assert (b in reach[a]) == is_subface(fa, fb)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 5))
def test_faces_and_patterns_agree(seed, n):
    rng = random.Random(seed)
    lam = random_lambda(rng, n)
    for face in enumerate_faces(lam).faces:
        pair = face_representative(lam, face)
        assert face_of(pair) == face.tight_set
        pat = build_pattern(pair)
        assert pat.shape_signature() == face.shape_signature
        free = sum(1 for c in pat.components if c.top_count == 0)
        assert free == face.dimension
        assert is_unlabelled_pattern(n, pat.edges)
        # another point in the same relative interior
        other = []
        for i, m in enumerate(pair.mu):
            hi, lo = pair.lam[i], pair.lam[i + 1]
            if lo < m < hi:
                m = lo + (hi - lo) * Fraction(rng.randint(1, 9), 10)
            other.append(m)
        data_a, dims_a = face_invariants(lam, face)
        data_b, dims_b = face_invariants(lam, face, other)
        assert dims_a == dims_b
        assert [b.pinned for b in data_a.L_blocks] == [b.pinned for b in data_b.L_blocks]
        assert build_pattern(validate_interlacing(lam, other)).shape_signature() == face.shape_signature


def test_close_tight_set():
    assert close_tight_set([2, 1, 0], [(UP, 1), (DOWN, 1)]) is None
    assert close_tight_set([1, 1, 0], []) == {(UP, 1), (DOWN, 1)}
    assert close_tight_set([2, 1, 0], [(DOWN, 1), (UP, 2)]) == {(DOWN, 1), (UP, 2)}
    with pytest.raises(ValueError):
        close_tight_set([2, 1, 0], [(UP, 3)])


def test_broken_rejected_worked_accepted(worked):
    worked_edges = build_pattern(worked).edges
    assert is_unlabelled_pattern(7, worked_edges)
    assert not is_unlabelled_pattern(7, BROKEN_EDGES)
    missing = close_edge_set(7, BROKEN_EDGES) - {frozenset(e) for e in BROKEN_EDGES}
    assert missing == {frozenset((B(4), B(5)))}
    assert not is_unlabelled_pattern(2, [(T(1), B(2))])


def test_bound():
    with pytest.raises(EnumerationBoundError):
        enumerate_faces(range(13, -1, -1))
    with pytest.raises(ValueError):
        enumerate_faces([0, 1])
    with pytest.raises(ValueError):
        enumerate_faces([1])


def test_json():
    js = lattice_to_json(enumerate_faces([2, 1, 0]))
    assert js["f_vector"] == [4, 4, 1]
    assert js["faces"][-1]["tight_set"] == []
    assert js["faces"][-1]["invariants"]["dimensions"]["dim_orbit"] == 6
    assert "invariants" not in lattice_to_json(enumerate_faces([2, 1, 0]), invariants=False)["faces"][0]
