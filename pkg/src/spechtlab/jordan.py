"""Generic and stable generic Jordan types over elementary abelian p-groups.

The generic Jordan type of M is read off from the ranks of powers of
N = a_1 (g_1 - 1) + ... + a_n (g_n - 1) over F_p(a_1, ..., a_n):
a nilpotent matrix with rank profile rho_j = rank N^j has
rho_{r-1} - 2 rho_r + rho_{r+1} Jordan blocks of size r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import exterior
from .fflinalg import PolyMatrix, generic_rank
from .permgrp import Perm, PermGroup
from .rep import ModuleRep


def _fmt_blocks(blocks, empty):
    parts = []
    for size in range(len(blocks), 0, -1):
        s = blocks[size - 1]
        if s:
            parts.append(f"[{size}]" + (f"^{s}" if s > 1 else ""))
    return "".join(parts) or empty


@dataclass(frozen=True)
class StableJordanType:
    """Multiplicities s_1..s_{p-1} of the non-projective blocks."""

    p: int
    blocks: tuple

    def __post_init__(self):
        if len(self.blocks) != self.p - 1 or any(s < 0 for s in self.blocks):
            raise ValueError(f"bad stable type {self.blocks} for p = {self.p}")

    @property
    def is_free(self):
        return not any(self.blocks)

    def complement(self) -> "StableJordanType":
        """Type with s_r and s_{p-r} swapped."""
        return StableJordanType(self.p, tuple(reversed(self.blocks)))

    @classmethod
    def ones(cls, p, s):
        """[1]^s."""
        return cls(p, (s,) + (0,) * (p - 2))

    def to_json(self):
        return {"blocks": {str(i + 1): s for i, s in enumerate(self.blocks)}, "free": self.is_free}

    def __str__(self):
        return _fmt_blocks(self.blocks, "free")


@dataclass(frozen=True)
class JordanType:
    """Multiplicities s_1..s_p of Jordan blocks of sizes 1..p."""

    p: int
    blocks: tuple
    ranks: tuple = field(default=(), compare=False)
    certified: bool = field(default=False, compare=False)

    def __post_init__(self):
        if len(self.blocks) != self.p or any(s < 0 for s in self.blocks):
            raise ValueError(f"bad Jordan type {self.blocks} for p = {self.p}")

    @property
    def dim(self):
        return sum((i + 1) * s for i, s in enumerate(self.blocks))

    def __add__(self, other: "JordanType") -> "JordanType":
        if other.p != self.p:
            raise ValueError("different primes")
        return JordanType(self.p, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def to_json(self):
        return {"blocks": {str(i + 1): s for i, s in enumerate(self.blocks)},
                "stable_free": is_generically_free(self)}

    def __str__(self):
        return _fmt_blocks(self.blocks, "0")


def stable_type(t: JordanType) -> StableJordanType:
    return StableJordanType(t.p, t.blocks[:-1])


def is_generically_free(t: JordanType) -> bool:
    return not any(t.blocks[:-1])


def blocks_from_ranks(dim, ranks, p):
    """Jordan multiplicities of a nilpotent with N^p = 0 from rank N^j, j = 1..p-1."""
    rho = [dim, *ranks, 0, 0]
    if len(rho) != p + 2:
        raise ValueError("need p-1 ranks")
    blocks = tuple(rho[r - 1] - 2 * rho[r] + rho[r + 1] for r in range(1, p + 1))
    if any(s < 0 for s in blocks):
        raise ArithmeticError(f"rank profile {rho} is not convex")
    return blocks


def _check_elementary(E: PermGroup, p):
    if not E.gens:
        return
    if not E.is_elementary_abelian(p) or E.order() != p ** len(E.gens):
        raise ValueError("E must be elementary abelian with independent generators")


def nilpotent_operator(M: ModuleRep, gens) -> PolyMatrix:
    """sum_i a_i (rho(g_i) - 1) as a matrix of linear forms."""
    eye = np.eye(M.dim, dtype=np.int64)
    return PolyMatrix.linear(M.p, [(M.matrix(g) - eye) % M.p for g in gens])


def generic_jordan_type(M: ModuleRep, E: PermGroup, seed: int = 0, trials: int = 8,
                        workers: int = 1) -> JordanType:
    """Generic Jordan type of M restricted to E, using E.gens in order."""
    p = M.p
    _check_elementary(E, p)
    if not E.gens or M.dim == 0:
        return JordanType(p, (M.dim,) + (0,) * (p - 1), (0,) * (p - 1), True)
    n_op = nilpotent_operator(M, E.gens)
    ranks, cert = [], True
    power = n_op
    for j in range(1, p):
        if j > 1:
            power = power @ n_op
        res = generic_rank(power, trials=trials, seed=seed, workers=workers)
        ranks.append(res.rank)
        cert = cert and res.certified
    return JordanType(p, blocks_from_ranks(M.dim, ranks, p), tuple(ranks), cert)


def fixed_subset_count(n, r, gens):
    """Number of r-subsets of {1..n} mapped to themselves by every generator."""
    rows = exterior.basis_indices(n, r)
    keep = np.ones(len(rows), dtype=bool)
    for g in gens:
        img = np.asarray(g.img, dtype=np.intp)[rows]
        keep &= exterior.rank_rows(n, r, img) == np.arange(len(rows))
    return int(keep.sum())


def monomial_stable_type(mod, E: PermGroup) -> StableJordanType:
    """Stable generic type [1]^s of the r-th exterior power, s = number of E-fixed r-subsets."""
    return StableJordanType.ones(mod.p, fixed_subset_count(mod.n, mod.r, E.gens))


def monomial_jordan_type(mod, E: PermGroup) -> JordanType:
    """Full generic type: [1]^s plus free blocks filling the dimension."""
    p = mod.p
    s = fixed_subset_count(mod.n, mod.r, E.gens)
    free, rem = divmod(comb(mod.n, mod.r) - s, p)
    if rem:
        raise ArithmeticError("non-fixed subsets do not fill free orbits")
    return JordanType(p, (s,) + (0,) * (p - 2) + (free,))


# ---------------------------------------------------------------------------
# generator changes and induced modules


def regenerate(E: PermGroup, exps, p) -> PermGroup:
    """E with generators h_i = prod_j g_j^{exps[i][j]} (exps invertible mod p)."""
    from .fflinalg import rank
    exps = np.asarray(exps, dtype=np.int64) % p
    if exps.shape != (len(E.gens),) * 2 or rank(exps, p) != len(E.gens):
        raise ValueError("exponent matrix must be square and invertible mod p")
    new = []
    for row in exps:
        h = Perm.identity(E.n)
        for g, a in zip(E.gens, row):
            h = h * g ** int(a)
        new.append(h)
    return PermGroup(E.n, new)


def induced_module(complement_gens, D: PermGroup, u_mats, p):
    """U induced from D to E = C x D, built as F(E/D) (x) U'.

    C = <complement_gens> acts by left multiplication on its own elements
    (a copy of E/D) and trivially on U'; D acts only on U' through ``u_mats``.
    Returns ``(E, module)``.
    """
    C = PermGroup(D.n, list(complement_gens))
    E = PermGroup(D.n, list(complement_gens) + list(D.gens))
    if C.order() * D.order() != E.order() or not E.is_abelian():
        raise ValueError("C and D must commute and meet trivially")
    u_mats = [np.asarray(m, dtype=np.int64) % p for m in u_mats]
    du = u_mats[0].shape[0] if u_mats else 1
    cosets = C.elements()
    k = len(cosets)
    mats = []
    for c in complement_gens:
        perm = np.zeros((k, k), dtype=np.int64)
        for i, x in enumerate(cosets):
            perm[C.index_of(np.asarray(c.img)[x]), i] = 1
        mats.append(np.kron(perm, np.eye(du, dtype=np.int64)))
    for m in u_mats:
        mats.append(np.kron(np.eye(k, dtype=np.int64), m))
    return E, ModuleRep.from_generators(E, mats, p, tag="induced")


# ---------------------------------------------------------------------------
# exterior powers of the hook S^(kp-1,1)


@dataclass
class ChainRow:
    i: int
    direct: StableJordanType
    recursive: StableJordanType | None
    middle_free: bool
    agree: bool

    def to_json(self):
        return {"i": self.i, "direct": str(self.direct),
                "recursive": None if self.recursive is None else str(self.recursive),
                "middle_free": self.middle_free, "agree": self.agree}


@dataclass
class ChainReport:
    p: int
    k: int
    rows: list
    top_fixed: int
    top_not_free_direct: bool
    top_not_free_recursive: bool

    @property
    def passed(self):
        return (all(r.agree for r in self.rows)
                and self.top_not_free_direct == self.top_not_free_recursive)

    def to_json(self):
        return {"p": self.p, "k": self.k, "rows": [r.to_json() for r in self.rows],
                "wedge_p_fixed_subsets": self.top_fixed,
                "top_not_free_direct": self.top_not_free_direct,
                "top_not_free_recursive": self.top_not_free_recursive,
                "passed": self.passed}


def stable_chain_report(p: int, k: int, E: PermGroup, seed: int = 0, workers: int = 1) -> ChainReport:
    """Stable types of the i-th exterior powers of S^(kp-1,1) restricted to E, i = 1..p.

    Each row is computed from generic ranks and, for i < p, also by passing
    to the complementary type through the sequence
    0 -> L^i S -> L^i E -> L^{i-1} S -> 0, valid when L^i E is generically free.
    For i = p the same sequence shows L^p S is not free whenever the
    combinatorial type of L^p E differs from the type of L^{p-1} S.
    """
    n = k * p
    if E.n != n:
        raise ValueError(f"E must act on {n} points")
    prev = StableJordanType.ones(p, 1)  # the trivial module
    rows = []
    for i in range(1, p + 1):
        direct = stable_type(generic_jordan_type(ModuleRep.hook(n, i, p), E, seed=seed, workers=workers))
        middle = StableJordanType.ones(p, fixed_subset_count(n, i, E.gens))
        if i < p:
            rec = prev.complement() if middle.is_free else None
            rows.append(ChainRow(i, direct, rec, middle.is_free, rec == direct))
            prev = rec if rec is not None else direct
        else:
            rows.append(ChainRow(i, direct, None, middle.is_free, True))
            top_fixed = middle.blocks[0]
            return ChainReport(p, k, rows, top_fixed, not direct.is_free, middle != prev)
    raise AssertionError("unreachable")
