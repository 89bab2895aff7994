"""Finite-dimensional F_p representations of permutation groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import exterior
from .permgrp import Perm, PermGroup


def permutation_matrix(sigma: Perm, p: int):
    """Matrix sending e_i to e_{sigma(i)}."""
    n = sigma.degree
    m = np.zeros((n, n), dtype=np.int64)
    m[list(sigma.img), range(n)] = 1
    return m


@dataclass(eq=False)
class ModuleRep:
    """An F_p-module for a group of permutations.

    ``action`` maps a permutation to its matrix.  Modules given only by
    generator matrices (``from_generators``) resolve other elements through
    the enumerated group.
    """

    p: int
    dim: int
    action: Callable[[Perm], np.ndarray]
    tag: str = ""
    module: object = None
    _cache: dict = field(default_factory=dict, repr=False)

    def matrix(self, sigma: Perm):
        m = self._cache.get(sigma.img)
        if m is None:
            m = np.asarray(self.action(sigma), dtype=np.int64) % self.p
            if m.shape != (self.dim, self.dim):
                raise ValueError(f"action returned shape {m.shape}, expected {(self.dim, self.dim)}")
            m.setflags(write=False)
            self._cache[sigma.img] = m
        return m

    # constructors -------------------------------------------------------
    @classmethod
    def natural(cls, n, p):
        return cls(p, n, lambda s: permutation_matrix(s, p), tag=f"natural({n})")

    @classmethod
    def trivial(cls, p):
        return cls(p, 1, lambda s: np.ones((1, 1), dtype=np.int64), tag="trivial")

    @classmethod
    def wedge(cls, n, r, p):
        from math import comb
        return cls(p, comb(n, r), lambda s: exterior.action_matrix(s, r, p), tag=f"wedge({n},{r})")

    @classmethod
    def hook(cls, n, r, p):
        mod = exterior.hook_specht(n, r, p)
        return cls(p, mod.dim, mod.action, tag=f"hook({n},{r})", module=mod)

    @classmethod
    def from_generators(cls, group: PermGroup, mats, p, tag=""):
        """Module of ``group`` fixed by generator matrices (one per ``group.gens``)."""
        mats = [np.asarray(m, dtype=np.int64) % p for m in mats]
        if len(mats) != len(group.gens):
            raise ValueError("need one matrix per generator")
        dim = mats[0].shape[0] if mats else 0
        table = {}
        elems = group.elements()
        ident = Perm.identity(group.n)
        table[ident.img] = np.eye(dim, dtype=np.int64)
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                mx = table[x.img]
                for g, mg in zip(group.gens, mats):
                    y = g * x
                    if y.img not in table:
                        table[y.img] = (mg @ mx) % p
                        nxt.append(y)
            frontier = nxt
        if len(table) != len(elems):  # pragma: no cover - closure mismatch
            raise RuntimeError("generator closure disagrees with the group")

        def action(s):
            try:
                return table[s.img]
            except KeyError:
                raise ValueError(f"{s} is not in the group") from None

        for x in list(table):
            mx = table[x]
            for g, mg in zip(group.gens, mats):
                if not np.array_equal(table[(g * Perm(x)).img], (mg @ mx) % p):
                    raise ValueError("generator matrices do not define a representation")
        return cls(p, dim, action, tag=tag)

    def direct_sum(self, other: "ModuleRep") -> "ModuleRep":
        if other.p != self.p:
            raise ValueError("different fields")
        d1, d2 = self.dim, other.dim

        def action(s):
            m = np.zeros((d1 + d2, d1 + d2), dtype=np.int64)
            m[:d1, :d1] = self.matrix(s)
            m[d1:, d1:] = other.matrix(s)
            return m

        return ModuleRep(self.p, d1 + d2, action, tag=f"{self.tag}+{other.tag}")

    def conjugated(self, basis_change) -> "ModuleRep":
        """Same module written in the basis given by the columns of ``basis_change``."""
        from .fflinalg import solve
        c = np.asarray(basis_change, dtype=np.int64) % self.p
        cinv = np.stack([solve(c, col, self.p) for col in np.eye(self.dim, dtype=np.int64)], axis=1)
        return ModuleRep(self.p, self.dim, lambda s: cinv @ self.matrix(s) @ c, tag=self.tag)

    def is_homomorphism_on(self, pairs) -> bool:
        """Spot check rho(st) = rho(s) rho(t) on the given pairs."""
        p = self.p
        return all(np.array_equal(self.matrix(s * t), (self.matrix(s) @ self.matrix(t)) % p)
                   for s, t in pairs)
