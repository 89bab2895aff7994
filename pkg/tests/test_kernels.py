import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from spechtlab import kernels
from spechtlab.fflinalg import ExtField


def sympy_rank(a, p):
    return DomainMatrix.from_list([[int(x) for x in row] for row in a], GF(p)).rank()


matrices = st.tuples(st.integers(1, 9), st.integers(1, 9), st.sampled_from([2, 3, 5, 7, 2**31 - 1]),
                     st.integers(0, 2**32 - 1))


@given(matrices)
def test_rank_matches_sympy(params):
    rows, cols, p, seed = params
    a = np.random.default_rng(seed).integers(0, min(p, 4), size=(rows, cols))
    want = sympy_rank(a, p)
    for b in kernels.available_backends():
        assert kernels.rank_modp(a, p, backend=b) == want


@given(matrices)
def test_rref_backends_agree(params):
    rows, cols, p, seed = params
    a = np.random.default_rng(seed).integers(0, p, size=(rows, cols))
    outs = [kernels.rref_modp(a, p, backend=b) for b in kernels.available_backends()]
    for r, piv in outs[1:]:
        assert np.array_equal(r, outs[0][0]) and piv == outs[0][1]


def test_rref_is_reduced(backend, rng):
    a = rng.integers(0, 5, size=(7, 11))
    r, piv = kernels.rref_modp(a, 5, backend=backend)
    for i, c in enumerate(piv):
        assert r[i, c] == 1
        assert np.count_nonzero(r[:, c]) == 1
    assert not r[len(piv):].any()


@pytest.mark.parametrize("shape", [(1, 1), (5, 64), (64, 5), (70, 130), (3, 200)])
def test_gf2_pack_roundtrip_and_rref(shape, backend, rng):
    a = rng.integers(0, 2, size=shape)
    assert np.array_equal(kernels.unpack_gf2(kernels.pack_gf2(a), shape[1]), a)
    r, piv = kernels.rref_gf2(a, backend=backend)
    r2, piv2 = kernels.rref_modp(a, 2, backend="python")
    assert piv == piv2 and np.array_equal(r, r2)


@pytest.mark.parametrize("p,e", [(2, 3), (3, 2), (5, 2), (2, 8)])
def test_extension_rank_backends(p, e, backend, rng):
    f = ExtField(p, e)
    m = f.random(rng, size=(7, 9))
    m[5] = f.add(m[1], m[2])  # force a dependency
    got = kernels.rank_gfq_log(f.to_log(m), f.qm1, f.zech, f.neg_one_log, backend=backend)
    assert got == f.rank(m) <= 6


def test_empty_matrices(backend):
    assert kernels.rank_modp(np.zeros((0, 3)), 3, backend=backend) == 0
    r, piv = kernels.rref_modp(np.zeros((2, 0)), 3, backend=backend)
    assert piv == []


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.rank_modp(np.eye(2), 3, backend="fortran")
