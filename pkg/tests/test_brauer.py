import itertools

import numpy as np
import pytest

from spechtlab.brauer import (MonomialModuleSpec, brauer_kernel, brauer_quotient, fixed_space,
                              left_coset_reps, monomial_orbit_basis, normalizer_action_check,
                              relative_trace, trace_image, trace_image_basis)
from spechtlab.fflinalg import rank
from spechtlab.permgrp import (Perm, PermGroup, construct_E, grid_alpha, grid_beta, grid_group,
                               maximal_subgroups_p_group, parse_cycles, symmetric_normalizer,
                               sylow_sym)
from spechtlab.rep import ModuleRep


def grp(n, *cycles):
    return PermGroup(n, [parse_cycles(c, n) for c in cycles])


def all_subgroups(Q):
    """Every subgroup of a small group, as generated by at most two elements plus closure."""
    elems = Q.element_perms()
    seen, out = set(), []
    for a, b in itertools.combinations_with_replacement(elems, 2):
        H = PermGroup(Q.n, [a, b])
        key = frozenset(r.tobytes() for r in H.elements())
        if key not in seen:
            seen.add(key)
            out.append(H)
    return out


def orbit_count(Q, n, r):
    subsets = {frozenset(s) for s in itertools.combinations(range(n), r)}
    count = 0
    while subsets:
        s = subsets.pop()
        orb = {frozenset(g.img[x] for x in s) for g in Q.element_perms()}
        subsets -= orb
        count += 1
    return count


def same_span(a, b, p):
    if a.shape[0] == 0 or b.shape[0] == 0:
        return a.shape[0] == b.shape[0] == 0 or rank(np.vstack([a, b]), p) == 0
    return rank(a, p) == rank(b, p) == rank(np.vstack([a, b]), p)


# -- fixed spaces -------------------------------------------------------------

def test_fixed_space_examples():
    V = ModuleRep.natural(6, 3)
    assert fixed_space(V, PermGroup(6, [])).shape[0] == 6
    assert fixed_space(V, construct_E(3, (2,), 6)).shape[0] == 2
    Q = PermGroup(9, [grid_alpha(3, 9), grid_beta(3, 9)])
    assert fixed_space(ModuleRep.wedge(9, 3, 3), Q).shape[0] == orbit_count(Q, 9, 3) == 12


def test_fixed_space_counts_orbits(rng):
    for _ in range(8):
        n = int(rng.integers(3, 8))
        gens = [Perm(rng.permutation(n)) for _ in range(int(rng.integers(1, 3)))]
        Q = PermGroup(n, gens)
        assert fixed_space(ModuleRep.natural(n, 2), Q).shape[0] == len(Q.orbit_sets())


# -- relative traces ------------------------------------------------------------

def test_relative_trace_examples():
    V = ModuleRep.natural(3, 3)
    Q = grp(3, "(1,2,3)")
    assert relative_trace(V, PermGroup(3, []), Q, [1, 0, 0]).tolist() == [1, 1, 1]
    v = np.array([2, 2, 2])
    assert relative_trace(V, Q, Q, v).tolist() == v.tolist()
    with pytest.raises(ValueError):
        relative_trace(V, Q, Q, [1, 0, 0])
    with pytest.raises(ValueError):
        relative_trace(V, grp(3, "(1,2)"), Q, [1, 1, 1])


def test_coset_reps_partition():
    Q = sylow_sym(9, 3)
    R = maximal_subgroups_p_group(Q)[0]
    reps = left_coset_reps(Q, R)
    assert len(reps) == 3
    cosets = {frozenset((q * Perm(r)).img for r in R.elements()) for q in reps}
    assert len(cosets) == 3 and sum(map(len, cosets)) == Q.order()


def test_trace_transitive_on_chains(rng):
    Q = sylow_sym(9, 3)
    V = ModuleRep.wedge(9, 2, 3)
    for S in maximal_subgroups_p_group(Q)[:4]:
        for R in maximal_subgroups_p_group(S)[:3]:
            fr = fixed_space(V, R)
            v = (rng.integers(0, 3, size=fr.shape[0]) @ fr) % 3
            direct = relative_trace(V, R, Q, v)
            staged = relative_trace(V, S, Q, relative_trace(V, R, S, v))
            assert np.array_equal(direct, staged)
            fixed_q = fixed_space(V, Q)
            assert rank(np.vstack([fixed_q, direct]), 3) == fixed_q.shape[0]


def test_trace_does_not_depend_on_representatives():
    Q = sylow_sym(6, 2)
    V = ModuleRep.wedge(6, 2, 2)
    R = maximal_subgroups_p_group(Q)[1]
    fr = fixed_space(V, R)
    reps = left_coset_reps(Q, R)
    shifted = [q * Perm(R.elements()[-1]) for q in reps]
    assert np.array_equal(relative_trace(V, R, Q, fr, reps), relative_trace(V, R, Q, fr, shifted))


# -- Brauer quotients --------------------------------------------------------------

def test_trivial_module_at_order_p():
    for p in (2, 3, 5):
        Q = PermGroup(p, [Perm.from_cycles(p, [list(range(1, p + 1))])])
        rep = brauer_quotient(ModuleRep.trivial(p), Q)
        assert (rep.dim_fixed, rep.dim_kernel, rep.dim_quotient) == (1, 0, 1)


def test_hook_vanishing_at_sylow():
    rep = brauer_quotient(ModuleRep.hook(6, 2, 2), sylow_sym(6, 2))
    assert rep.dim_quotient == 0
    assert rep.dim_fixed == rep.dim_kernel


def test_hook_nonvanishing_at_grid():
    Q = PermGroup(9, [grid_alpha(3, 9), grid_beta(3, 9)])
    rep = brauer_quotient(ModuleRep.hook(9, 3, 3), Q)
    assert rep.dim_quotient >= 1
    assert rep.dim_fixed - rep.dim_kernel == rep.dim_quotient
    assert set(rep.to_json()) == {"dim_fixed", "dim_kernel", "dim_quotient", "orbit_labels"}


def test_rejects_non_p_groups():
    with pytest.raises(ValueError):
        brauer_quotient(ModuleRep.natural(3, 2), PermGroup.symmetric(3))
    with pytest.raises(ValueError):
        brauer_quotient(ModuleRep.natural(3, 2), grp(3, "(1,2,3)"))


@pytest.mark.parametrize("Q,V", [
    (construct_E(3, (2,), 6), ModuleRep.wedge(6, 3, 3)),
    (construct_E(2, (2,), 4), ModuleRep.natural(4, 2)),
    (grp(4, "(1,2,3,4)", "(1,3)"), ModuleRep.wedge(4, 2, 2)),
    (grp(4, "(1,2,3,4)", "(1,3)"), ModuleRep.hook(4, 1, 2)),
])
def test_maximal_subgroups_suffice(Q, V):
    proper = [H for H in all_subgroups(Q) if H.order() < Q.order()]
    full = brauer_kernel(V, Q, subgroups=proper)
    maximal = brauer_kernel(V, Q)
    assert same_span(full, maximal, V.p)


def test_normalizer_action():
    Q = PermGroup(9, [grid_alpha(3, 9), grid_beta(3, 9)])
    V = ModuleRep.hook(9, 3, 3)
    rep = brauer_quotient(V, Q)
    assert normalizer_action_check(V, Q, grid_alpha(3, 9), rep)
    assert normalizer_action_check(V, Q, Perm.identity(9), rep)
    norm = symmetric_normalizer(Q)
    outside = [Perm(r) for r in norm if not Q.contains(Perm(r))]
    assert len(norm) == 432 and outside
    for g in outside[:: max(1, len(outside) // 12)]:
        assert normalizer_action_check(V, Q, g, rep)
    with pytest.raises(ValueError):
        normalizer_action_check(V, Q, parse_cycles("(1,2)", 9), rep)


# -- monomial orbit bases -----------------------------------------------------------

def test_orbit_basis_examples():
    mod = MonomialModuleSpec(3, 1, 3)
    basis = monomial_orbit_basis(mod, grp(3, "(1,2,3)"))
    assert len(basis) == 1 and basis[0].vector.tolist() == [1, 1, 1]
    triv = monomial_orbit_basis(MonomialModuleSpec(5, 2, 3), PermGroup(5, []))
    assert np.array_equal(np.array([o.vector for o in triv]), np.eye(10, dtype=np.int64))


@pytest.mark.parametrize("n,r,p,Q", [
    (9, 3, 3, PermGroup(9, [grid_alpha(3, 9), grid_beta(3, 9)])),
    (6, 2, 2, sylow_sym(6, 2)),
    (6, 3, 3, construct_E(3, (2,), 6)),
    (8, 3, 2, construct_E(2, (0, 2), 8)),
])
def test_orbit_basis_spans_fixed_space(n, r, p, Q):
    mod = MonomialModuleSpec(n, r, p)
    basis = monomial_orbit_basis(mod, Q)
    assert len(basis) == orbit_count(Q, n, r)
    vecs = np.array([o.vector for o in basis])
    assert same_span(vecs, fixed_space(mod.rep(), Q), p)
    assert all(o.stabilizer_order * o.orbit_size == Q.order() for o in basis)


def test_orbit_basis_splits_on_grid_plus_tail():
    n = 12
    T = parse_cycles("(10,11,12)", n)
    Q = PermGroup(n, [grid_alpha(3, n), T])
    basis = monomial_orbit_basis(MonomialModuleSpec(n, 3, 3), Q)
    inner = [o for o in basis if max(o.rep) <= 9]
    outer = [o for o in basis if max(o.rep) > 9]
    assert len(inner) + len(outer) == len(basis) == orbit_count(Q, n, 3)
    rows = np.array([[a - 1 for a in s] for s in itertools.combinations(range(1, n + 1), 3)])
    for o in inner:
        assert np.all(rows[o.positions] < 9)
    for o in outer:
        assert np.all(np.any(rows[o.positions] >= 9, axis=1))
    assert len(inner) == orbit_count(PermGroup(9, [grid_alpha(3, 9)]), 9, 3)


@pytest.mark.parametrize("k", [3, 4])
def test_trace_image_basis_matches_traces(k):
    Q, alpha, beta, t = grid_group(3, k)
    n = 3 * k
    mod = MonomialModuleSpec(n, 3, 3)
    V = mod.rep()
    maxes = maximal_subgroups_p_group(Q)
    for R in maxes:
        sel = trace_image_basis(mod, R, Q)
        vecs = np.array([o.vector for o in sel]) if sel else np.zeros((0, V.dim), dtype=np.int64)
        assert same_span(vecs, trace_image(V, R, Q), 3)
    all_sums = monomial_orbit_basis(mod, Q)
    assert len(trace_image_basis(mod, Q, Q)) == len(all_sums)
    free = [o for o in all_sums if o.stabilizer_order == 1]
    assert len(trace_image_basis(mod, PermGroup(n, []), Q)) == len(free)
    # the orbit of {1,2,3} survives exactly for R = <alpha, T>
    at = PermGroup(n, [alpha] + list(t))
    for R in maxes:
        has = any(o.rep == (1, 2, 3) for o in trace_image_basis(mod, R, Q))
        assert has == (R == at)
