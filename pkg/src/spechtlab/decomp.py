"""Endomorphism algebras and decomposition search via Fitting's lemma.

A split found here is a certificate of decomposability.  Failing to find one
proves nothing: ``NoSplitFound`` only records how many random endomorphisms
were tried.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .fflinalg import in_span, matpow, nullspace, rank, row_space
from .rep import ModuleRep


@dataclass
class EndoAlgebra:
    p: int
    dim: int
    basis: np.ndarray = field(repr=False)  # (k, d, d)

    @property
    def size(self):
        return self.basis.shape[0]

    def element(self, coeffs):
        return np.tensordot(np.asarray(coeffs, dtype=np.int64), self.basis, axes=1) % self.p


def endomorphism_algebra(V: ModuleRep, gens) -> EndoAlgebra:
    """Matrices X with X rho(g) = rho(g) X for every g in ``gens``."""
    d, p = V.dim, V.p
    eye = np.eye(d, dtype=np.int64)
    if not gens:
        sols = np.eye(d * d, dtype=np.int64)
    else:
        # row-major vec: vec(XA) = (I (x) A^T) vec X, vec(AX) = (A (x) I) vec X
        blocks = [(np.kron(eye, V.matrix(g).T) - np.kron(V.matrix(g), eye)) % p for g in gens]
        sols = nullspace(np.vstack(blocks), p)
    return EndoAlgebra(p, d, sols.reshape(-1, d, d))


@dataclass
class SplitResult:
    decomposed: bool
    trials: int
    parts: tuple = field(default=(), repr=False)

    @property
    def dims(self):
        return [b.shape[0] for b in self.parts]

    def to_json(self):
        out = {"status": "decomposed" if self.decomposed else "no_split"}
        if self.decomposed:
            out["dims"] = self.dims
        out["trials"] = self.trials
        return out


def _invariant(V, gens, basis):
    return all(in_span(basis, (basis @ V.matrix(g).T) % V.p, V.p) for g in gens)


def verify_split(V: ModuleRep, gens, parts) -> bool:
    """Both row spaces are invariant and together give a direct sum equal to V."""
    a, b = parts
    if a.shape[0] + b.shape[0] != V.dim:
        return False
    if rank(np.vstack([a, b]), V.p) != V.dim:
        return False
    return _invariant(V, gens, a) and _invariant(V, gens, b)


def _fitting_pair(phi, p):
    """Row bases of ker phi^d and im phi^d."""
    d = phi.shape[0]
    big = matpow(phi, d, p)
    return nullspace(big, p), row_space(big.T, p)


def fitting_split(V: ModuleRep, gens, trials: int = 200, seed: int = 0, workers: int = 1,
                  algebra: EndoAlgebra | None = None) -> SplitResult:
    """Search for a nontrivial Fitting decomposition ker phi^d + im phi^d.

    Trial t samples phi from the endomorphism algebra with rng seeded by
    (seed, t); the lowest successful trial index wins.
    """
    alg = algebra if algebra is not None else endomorphism_algebra(V, gens)
    p, d = V.p, V.dim
    if alg.size <= 1 or d <= 1:
        return SplitResult(False, trials)

    def attempt(t):
        rng = np.random.default_rng([seed, t])
        phi = alg.element(rng.integers(0, p, size=alg.size))
        ker, im = _fitting_pair(phi, p)
        if 0 < ker.shape[0] < d:
            return ker, im
        return None

    found = None
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(attempt, range(trials)))
        found = next(((t, r) for t, r in enumerate(results) if r is not None), None)
    else:
        for t in range(trials):
            r = attempt(t)
            if r is not None:
                found = (t, r)
                break
    if found is None:
        return SplitResult(False, trials)
    t, parts = found
    if not verify_split(V, gens, parts):
        raise AssertionError("Fitting pair failed verification")
    return SplitResult(True, t + 1, parts)
