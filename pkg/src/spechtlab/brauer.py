"""Fixed points, relative traces and Brauer quotients.

Vectors and subspace bases are numpy arrays; a basis is stored as rows.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import exterior
from .fflinalg import in_span, nullspace, rank, row_space
from .permgrp import Perm, PermGroup, _p_of, maximal_subgroups_p_group
from .rep import ModuleRep


def fixed_space(V: ModuleRep, Q: PermGroup):
    """Basis (rows) of the vectors fixed by every generator of Q."""
    if not Q.gens:
        return np.eye(V.dim, dtype=np.int64)
    eye = np.eye(V.dim, dtype=np.int64)
    stacked = np.vstack([(V.matrix(g) - eye) % V.p for g in Q.gens])
    return nullspace(stacked, V.p)


def left_coset_reps(Q: PermGroup, R: PermGroup):
    """First element (in Q's enumeration order) of each left coset qR."""
    q_elems = Q.elements()
    r_elems = R.elements().astype(np.intp)
    covered = np.zeros(len(q_elems), dtype=bool)
    reps = []
    for i, q in enumerate(q_elems):
        if covered[i]:
            continue
        reps.append(Perm(q))
        for row in q[r_elems]:
            j = Q.index_of(row)
            if j is None:
                raise ValueError("R is not a subgroup of Q")
            covered[j] = True
    return reps


def _check_subgroup(R: PermGroup, Q: PermGroup):
    if R.n != Q.n or not R.is_subgroup_of(Q):
        raise ValueError("R is not a subgroup of Q")


def _is_fixed(V, G, vecs):
    vecs = np.atleast_2d(vecs)
    return all(np.array_equal((vecs @ V.matrix(g).T) % V.p, vecs % V.p) for g in G.gens)


def relative_trace(V: ModuleRep, R: PermGroup, Q: PermGroup, v, reps=None):
    """Sum of sigma.v over left coset representatives sigma of Q/R.

    ``v`` may be one vector or a stack of row vectors.
    """
    _check_subgroup(R, Q)
    v = np.asarray(v, dtype=np.int64) % V.p
    if not _is_fixed(V, R, v):
        raise ValueError("vector is not fixed by R")
    if reps is None:
        reps = left_coset_reps(Q, R)
    single = v.ndim == 1
    vv = np.atleast_2d(v)
    out = np.zeros_like(vv)
    for s in reps:
        out = (out + vv @ V.matrix(s).T) % V.p
    return out[0] if single else out


def trace_image(V: ModuleRep, R: PermGroup, Q: PermGroup):
    """Echelon basis (rows) of Tr_R^Q applied to V^R."""
    fr = fixed_space(V, R)
    if fr.shape[0] == 0:
        return np.zeros((0, V.dim), dtype=np.int64)
    return row_space(relative_trace(V, R, Q, fr), V.p)


@dataclass
class BrauerReport:
    dim_fixed: int
    dim_kernel: int
    dim_quotient: int
    fixed_basis: np.ndarray = field(repr=False)
    kernel_basis: np.ndarray = field(repr=False)
    orbit_labels: list = field(default_factory=list)

    def to_json(self):
        return {"dim_fixed": self.dim_fixed, "dim_kernel": self.dim_kernel,
                "dim_quotient": self.dim_quotient, "orbit_labels": self.orbit_labels}


def brauer_kernel(V: ModuleRep, Q: PermGroup, subgroups=None, workers=1):
    """Span of traces from the given proper subgroups (default: the maximal ones)."""
    if subgroups is None:
        subgroups = maximal_subgroups_p_group(Q) if Q.order() > 1 else []
    if workers > 1 and len(subgroups) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda R: trace_image(V, R, Q), subgroups))
    else:
        parts = [trace_image(V, R, Q) for R in subgroups]
    parts = [x for x in parts if x.shape[0]]
    if not parts:
        return np.zeros((0, V.dim), dtype=np.int64)
    return row_space(np.vstack(parts), V.p)


def brauer_quotient(V: ModuleRep, Q: PermGroup, subgroups=None, workers=1) -> BrauerReport:
    """Dimensions of V^Q, its Brauer kernel and the quotient V(Q)."""
    order = Q.order()
    if order > 1 and _p_of(order) != V.p:
        raise ValueError(f"Q has order {order}, not a power of p = {V.p}")
    fixed = fixed_space(V, Q)
    kernel = brauer_kernel(V, Q, subgroups, workers)
    dk = rank(kernel, V.p) if kernel.shape[0] else 0
    return BrauerReport(fixed.shape[0], dk, fixed.shape[0] - dk, fixed, kernel)


def normalizer_action_check(V: ModuleRep, Q: PermGroup, g: Perm, report: BrauerReport | None = None) -> bool:
    """Whether rho(g) preserves V^Q and the Brauer kernel (g must normalize Q)."""
    if not Q.normalizes(g):
        raise ValueError("g does not normalize Q")
    if report is None:
        report = brauer_quotient(V, Q)
    m = V.matrix(g)
    for basis in (report.fixed_basis, report.kernel_basis):
        if basis.shape[0] and not in_span(basis, (basis @ m.T) % V.p, V.p):
            return False
    return True


# ---------------------------------------------------------------------------
# monomial modules: exterior powers of the natural module


@dataclass(frozen=True)
class MonomialModuleSpec:
    """r-th exterior power of F_p^n, induced from sgn x trivial on S_r x S_{n-r}."""

    n: int
    r: int
    p: int

    def rep(self) -> ModuleRep:
        return ModuleRep.wedge(self.n, self.r, self.p)

    @property
    def dim(self):
        return comb(self.n, self.r)


@dataclass
class OrbitSum:
    rep: tuple
    stabilizer_order: int
    orbit_size: int
    vector: np.ndarray = field(repr=False)
    positions: np.ndarray = field(repr=False)

    @property
    def label(self):
        return "{" + ",".join(map(str, self.rep)) + "}"


def _subset_images(Q: PermGroup, n, r):
    """Array (|Q|, C(n,r)) of ranks of q(subset)."""
    rows = exterior.basis_indices(n, r)
    elems = Q.elements().astype(np.intp)
    mapped = elems[:, rows]
    shape = mapped.shape
    ranks = exterior.rank_rows(n, r, mapped.reshape(-1, r))
    signs = exterior._sort_sign(mapped.reshape(-1, r))
    return ranks.reshape(shape[:2]), signs.reshape(shape[:2])


def monomial_orbit_basis(mod: MonomialModuleSpec, Q: PermGroup):
    """One signed orbit sum per Q-orbit on r-subsets, a basis of the Q-fixed space."""
    n, r, p = mod.n, mod.r, mod.p
    ranks, signs = _subset_images(Q, n, r)
    dim = ranks.shape[1]
    seen = np.zeros(dim, dtype=bool)
    out = []
    rows = exterior.basis_indices(n, r)
    for a in range(dim):
        if seen[a]:
            continue
        imgs = ranks[:, a]
        uniq, first = np.unique(imgs, return_index=True)
        vec = np.zeros(dim, dtype=np.int64)
        vec[uniq] = signs[first, a] % p
        seen[uniq] = True
        stab = int(np.sum(imgs == a))
        out.append(OrbitSum(tuple(int(x) + 1 for x in rows[a]), stab, len(uniq), vec, uniq))
    return out


def _stabilizer_orders(Q: PermGroup, n, r):
    ranks, _ = _subset_images(Q, n, r)
    return (ranks == np.arange(ranks.shape[1])[None, :]).sum(axis=0)


def trace_image_basis(mod: MonomialModuleSpec, R: PermGroup, Q: PermGroup):
    """Orbit sums spanning Tr_R^Q of the R-fixed space.

    A Q-orbit sum is kept when some subset in the orbit has the same
    stabilizer in R as in Q.
    """
    _check_subgroup(R, Q)
    sq = _stabilizer_orders(Q, mod.n, mod.r)
    sr = _stabilizer_orders(R, mod.n, mod.r)
    equal = sq == sr
    return [o for o in monomial_orbit_basis(mod, Q) if equal[o.positions].any()]


def subspace_restriction(V: ModuleRep, basis):
    """Action on an invariant subspace given by row basis (coordinates via least pivots)."""
    from .fflinalg import solve
    basis = np.asarray(basis, dtype=np.int64) % V.p
    k = basis.shape[0]

    def action(s):
        img = (basis @ V.matrix(s).T) % V.p
        return np.stack([solve(basis.T, row, V.p) for row in img], axis=1).reshape(k, k)

    return ModuleRep(V.p, k, action, tag=f"sub({V.tag})")
