from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spechtlab.exterior import (MultiIndex, WedgeVector, act, action_matrix, basis_indices,
                                bilinear_form, delta, delta_matrix, delta_product_rule_check,
                                filtration_component, from_standard, hook_specht,
                                rewrite_to_standard, vector_w, vector_wj, vector_z, wedge)
from spechtlab.fflinalg import rank
from spechtlab.permgrp import Perm, grid_alpha, grid_beta, parse_cycles

mono = WedgeVector.monomial


def random_vec(rng, n, r, p):
    return WedgeVector(n, r, p, rng.integers(0, p, size=comb(n, r)))


def random_perm(rng, n):
    return Perm(rng.permutation(n))


# -- multi-indices ----------------------------------------------------------

@given(st.integers(1, 10).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_rank_unrank_bijection(nr):
    n, r = nr
    ranks = [MultiIndex(n, idx).rank() for idx in combinations(range(1, n + 1), r)]
    assert ranks == list(range(comb(n, r)))
    assert all(MultiIndex.unrank(n, r, k).rank() == k for k in range(comb(n, r)))


def test_multi_index_validation():
    with pytest.raises(ValueError):
        MultiIndex(4, (2, 1))
    with pytest.raises(ValueError):
        MultiIndex(4, (3, 5))


# -- action ---------------------------------------------------------------------

def test_act_examples():
    t = parse_cycles("(1,2)", 3)
    assert act(t, mono(3, 2, (1, 2))) == mono(3, 2, (1, 2))
    assert act(t, mono(3, 3, (1, 2))) == mono(3, 3, (1, 2), 2)
    assert act(Perm.identity(3), mono(3, 3, (1, 3))) == mono(3, 3, (1, 3))
    assert act(parse_cycles("(1,2,3)"), mono(3, 3, (1, 2))) == mono(3, 3, (2, 3))
    with pytest.raises(ValueError):
        act(Perm.identity(4), mono(3, 3, (1, 2)))


@given(st.integers(2, 7), st.integers(0, 4), st.sampled_from([2, 3, 5]), st.integers(0, 2**32 - 1))
def test_action_is_homomorphism(n, r, p, seed):
    r = min(r, n)
    rng = np.random.default_rng(seed)
    s, t = random_perm(rng, n), random_perm(rng, n)
    v = random_vec(rng, n, r, p)
    assert act(s * t, v) == act(s, act(t, v))
    assert np.array_equal(action_matrix(s, r, p) @ v.coeffs % p, act(s, v).coeffs)


# -- boundary map -----------------------------------------------------------------

def test_delta_examples():
    assert delta(mono(3, 3, (1, 2))) == mono(3, 3, (2,)) - mono(3, 3, (1,))
    assert delta(mono(4, 5, (3,))) == WedgeVector.scalar(4, 5, 1)
    lhs = delta(mono(3, 3, (1, 2, 3)))
    assert lhs == mono(3, 3, (2, 3)) - mono(3, 3, (1, 3)) + mono(3, 3, (1, 2))


@given(st.integers(2, 9), st.integers(2, 9), st.sampled_from([2, 3, 5]), st.integers(0, 2**32 - 1))
def test_delta_squared_and_equivariance(n, r, p, seed):
    r = min(r, n)
    rng = np.random.default_rng(seed)
    v = random_vec(rng, n, r, p)
    assert delta(delta(v)).is_zero()
    s = random_perm(rng, n)
    assert act(s, delta(v)) == delta(act(s, v))


@pytest.mark.parametrize("n", [4, 6, 7])
def test_exactness_dimensions(n):
    for p in (2, 3, 5):
        for r in range(1, n):
            im_next = rank(delta_matrix(n, r + 1, p), p)
            ker = comb(n, r) - rank(delta_matrix(n, r, p), p)
            assert ker == im_next == comb(n - 1, r)


def test_product_rule_examples(rng):
    assert delta_product_rule_check(mono(5, 2, (1,)), mono(5, 2, (2,)))
    assert delta_product_rule_check(mono(5, 3, (1, 2)), mono(5, 3, (3,)))
    for _ in range(10):
        assert delta_product_rule_check(random_vec(rng, 7, 2, 3), random_vec(rng, 7, 2, 3))


def test_wedge_of_differences_is_boundary(rng):
    for _ in range(25):
        n = int(rng.integers(3, 9))
        r = int(rng.integers(1, n))
        pts = rng.choice(np.arange(1, n + 1), size=r + 1, replace=False)
        j, idx = int(pts[0]), [int(x) for x in pts[1:]]
        p = int(rng.choice([2, 3, 5]))
        lhs = WedgeVector.scalar(n, p, 1)
        for i in idx:
            lhs = wedge(lhs, mono(n, p, (i,)) - mono(n, p, (j,)))
        assert lhs == delta(mono(n, p, [j] + idx))


def test_wedge_antisymmetry():
    assert wedge(mono(4, 5, (1,)), mono(4, 5, (1,))).is_zero()
    assert wedge(mono(4, 5, (2,)), mono(4, 5, (1,))) == -mono(4, 5, (1, 2))


# -- hook Specht modules ----------------------------------------------------------

@pytest.mark.parametrize("n,r,p,dim", [(9, 3, 3, 56), (10, 2, 5, 36), (6, 2, 2, 10)])
def test_hook_dimensions(n, r, p, dim):
    h = hook_specht(n, r, p)
    assert h.dim == dim == comb(n - 1, r)
    assert rank(h.basis.T, p) == dim
    assert not (delta_matrix(n, r, p) @ h.basis % p).any()


def test_hook_r1_basis():
    h = hook_specht(5, 1, 3)
    expected = [mono(5, 3, (j,)) - mono(5, 3, (1,)) for j in range(2, 6)]
    assert [h.column(k) for k in range(4)] == expected
    with pytest.raises(ValueError):
        hook_specht(5, 5, 3)


@pytest.mark.parametrize("n,r,p", [(5, 2, 3), (6, 3, 2), (7, 2, 5)])
def test_hook_closed_under_generators(n, r, p):
    h = hook_specht(n, r, p)
    for s in (parse_cycles("(1,2)", n), Perm.from_cycles(n, [list(range(1, n + 1))])):
        img = action_matrix(s, r, p) @ h.basis % p
        assert np.array_equal(h.basis @ h.action(s) % p, img)


@pytest.mark.parametrize("n,r,p", [(5, 2, 3), (6, 3, 5), (7, 3, 2)])
def test_transposition_garnir_pattern(n, r, p):
    h = hook_specht(n, r, p)
    s12 = parse_cycles("(1,2)", n)
    index = {j: k for k, j in enumerate(h.standard_indices())}
    for j, k in index.items():
        mu = rewrite_to_standard(act(s12, h.column(k)))
        want = np.zeros(h.dim, dtype=np.int64)
        if j[0] == 2:
            want[k] = -1
        else:
            want[k] = 1
            for a, ia in enumerate(j, start=1):
                t = tuple(sorted((2,) + tuple(x for x in j if x != ia)))
                want[index[t]] += (-1) ** a
        assert np.array_equal(mu, want % p), j


def test_rewrite_examples(rng):
    u = delta(mono(4, 3, (1, 2, 3)))
    mu = rewrite_to_standard(u)
    h = hook_specht(4, 2, 3)
    assert mu.tolist() == [int(j == (2, 3)) for j in h.standard_indices()]
    assert not rewrite_to_standard(WedgeVector.zero(4, 2, 3)).any()
    with pytest.raises(ValueError):
        rewrite_to_standard(mono(4, 3, (1, 2)))
    for _ in range(10):
        v = delta(random_vec(rng, 7, 4, 5))
        assert from_standard(7, 3, 5, rewrite_to_standard(v)) == v


def test_kernel_is_invariant(rng):
    h = hook_specht(7, 3, 3)
    for _ in range(5):
        s = random_perm(rng, 7)
        img = action_matrix(s, 3, 3) @ h.basis % 3
        assert not (delta_matrix(7, 3, 3) @ img % 3).any()
        assert rank(img.T, 3) == h.dim


# -- the explicit vectors ---------------------------------------------------------

def test_vector_w_small():
    w = vector_w(2, 2)
    assert w == wedge(mono(4, 2, (1,)) + mono(4, 2, (3,)), mono(4, 2, (2,)) + mono(4, 2, (4,)))
    assert w.coefficient((1, 2)) == 1


@pytest.mark.parametrize("k", [3, 4])
def test_vector_w_p3(k):
    n = 3 * k
    w = vector_w(3, k)
    assert len(w.terms()) == 27 and all(c in (1, 2) for _, c in w.terms())
    assert delta(w).is_zero()
    assert act(grid_alpha(3, n), w) == w and act(grid_beta(3, n), w) == w
    if k > 3:
        assert act(parse_cycles("(10,11,12)", n), w) == w
        assert act(parse_cycles("(10,11)", n), w) == w
    assert bilinear_form(w, mono(n, 3, (1, 2, 3))) == 1
    with pytest.raises(ValueError):
        vector_w(3, 2)


def test_vector_z():
    z = vector_z(3, 2, 9)
    assert len(z.terms()) == 8
    assert z.coefficient((4, 5, 6)) == 1 and z.coefficient((1, 2, 3)) == 2
    assert delta(z).is_zero()
    assert act(grid_alpha(3, 9), z) == z
    outside = [idx for idx, _ in z.terms() if not set(idx) & {1, 2, 3}]
    assert outside == [(4, 5, 6)]
    with pytest.raises(ValueError):
        vector_z(3, 1, 9)


def test_vector_wj():
    w = vector_wj(3, (2, 3, 4), 9)
    assert delta(w).is_zero()
    assert act(grid_alpha(3, 9), w) == w
    assert from_standard(9, 3, 3, rewrite_to_standard(w)) == w
    with pytest.raises(ValueError):
        vector_wj(3, (1, 2, 3), 9)


def test_filtration():
    parts = filtration_component(mono(9, 3, (1, 2, 4)))
    assert [c for c, v in enumerate(parts) if not v.is_zero()] == [2]
    w = vector_w(3, 3)
    parts = filtration_component(w)
    assert sum(parts[1:], parts[0]) == w
    assert parts[3].coefficient((1, 2, 3)) == 1
    assert sum(not v.is_zero() for v in parts) > 1
    assert all(v.is_zero() for v in filtration_component(WedgeVector.zero(9, 3, 3)))


def test_bilinear_form():
    assert bilinear_form(mono(4, 3, (1, 2)), mono(4, 3, (1, 2))) == 1
    assert bilinear_form(mono(4, 3, (1, 2)), mono(4, 3, (1, 3))) == 0
    with pytest.raises(ValueError):
        bilinear_form(mono(4, 3, (1,)), mono(4, 3, (1, 2)))


def test_text_round_trip(rng):
    v = random_vec(rng, 6, 3, 5)
    assert WedgeVector.from_text(v.to_text(), 6, 3, 5) == v
    assert WedgeVector.from_text("0", 6, 3, 5).is_zero()
    with pytest.raises(ValueError):
        WedgeVector.from_text("1*[1,2]", 6, 3, 5)


def test_basis_indices_sorted():
    rows = basis_indices(6, 3)
    assert [tuple(r) for r in rows] == sorted(combinations(range(6), 3))
