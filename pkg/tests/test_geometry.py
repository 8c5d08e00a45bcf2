from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import chamber_rays, dot, frac_rank, line
from rhocert.errors import InvalidInput, ResourceLimit, ZeroFunctional
from rhocert.geometry import canonicalize, enumerate_test_rays, kernel_basis, rank

X, Y = (1, 0), (0, 1)


@pytest.mark.parametrize(
    "v, expected",
    [((2, 4), (1, 2)), ((0, -3), (0, 1)), ((Fraction(1, 2), Fraction(-3, 4)), (2, -3)), ((-5,), (1,))],
)
def test_canonicalize(v, expected):
    assert canonicalize(v).coeffs == expected


def test_canonicalize_zero():
    with pytest.raises(ZeroFunctional):
        canonicalize((0, 0))


@pytest.mark.parametrize(
    "normals, d, expected",
    [([X, Y], 2, 2), ([(1, 1), (2, 2)], 2, 1), ([], 3, 0), ([(1, 2, 3), (2, 4, 6), (0, 0, 1)], 3, 2)],
)
def test_rank(normals, d, expected):
    assert rank(normals, d) == expected


def test_rank_length_mismatch():
    with pytest.raises(InvalidInput):
        rank([(1, 2)], 3)


def test_rays_coordinate_axes():
    rs = enumerate_test_rays([X, Y], 2)
    assert rs.lineality_dim == 0
    assert set(rs.rays) == {(1, 0), (-1, 0), (0, 1), (0, -1)}


def test_rays_with_diagonal():
    rs = enumerate_test_rays([X, Y, (1, -1)], 2)
    assert set(rs.rays) == {(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)}


def test_rays_no_normals():
    rs = enumerate_test_rays([], 2)
    assert rs.lineality_dim == 2
    assert any(rs.lineality_witness)


def test_rays_lineality_witness():
    rs = enumerate_test_rays([(1, 1)], 2)
    assert rs.lineality_dim == 1
    assert line(rs.lineality_witness) == (1, -1)


def test_rays_small_dimensions():
    assert set(enumerate_test_rays([(3,)], 1).rays) == {(1,), (-1,)}
    empty = enumerate_test_rays([], 0)
    assert empty.rays == () and empty.lineality_dim == 0


def test_cap_is_loud():
    normals = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    with pytest.raises(ResourceLimit) as info:
        enumerate_test_rays(normals, 3, cap=3)
    assert info.value.count == 4
    assert len(enumerate_test_rays(normals, 3).lines) > 0


def test_kernel_basis():
    (v,) = kernel_basis([(1, 1, 0), (0, 1, 1)], 3)
    assert line(v) == (1, -1, 1)


covector = st.lists(st.integers(-2, 2), min_size=2, max_size=2)


@st.composite
def arrangements(draw, max_d=3, max_normals=6):
    d = draw(st.integers(1, max_d))
    vecs = draw(
        st.lists(st.lists(st.integers(-2, 2), min_size=d, max_size=d), min_size=0, max_size=max_normals)
    )
    return d, [tuple(v) for v in vecs if any(v)]


@settings(max_examples=300, deadline=None)
@given(arrangements(), st.randoms(use_true_random=False), st.lists(st.integers(1, 3), min_size=6, max_size=6))
def test_rays_invariant_under_permutation_and_scaling(arr, rnd, scales):
    d, normals = arr
    base = enumerate_test_rays(normals, d)
    shuffled = [tuple(s * x for x in v) for v, s in zip(normals, scales * 2)]
    rnd.shuffle(shuffled)
    other = enumerate_test_rays([tuple(-x for x in v) for v in shuffled], d)
    assert set(other.lines) == set(base.lines)
    assert other.lineality_dim == base.lineality_dim


@settings(max_examples=300, deadline=None)
@given(arrangements())
def test_rays_are_primitive_and_on_enough_hyperplanes(arr):
    d, normals = arr
    rs = enumerate_test_rays(normals, d)
    r = frac_rank(normals, d)
    assert rs.lineality_dim == d - r
    for v in rs.lines:
        assert line(v) == v
        tight = [n for n in normals if dot(n, v) == 0]
        if rs.lineality_dim == 0:
            assert frac_rank(tight, d) == d - 1
        else:
            assert frac_rank(tight, d) == r - 1


@settings(max_examples=1000, deadline=None)
@given(arrangements(max_d=3, max_normals=6))
def test_rays_complete_against_double_description(arr):
    d, normals = arr
    rs = enumerate_test_rays(normals, d)
    if rs.lineality_dim:
        return
    expected = {line(v) for v in chamber_rays(normals, d)}
    assert expected <= set(rs.lines)
