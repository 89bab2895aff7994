"""Exterior powers of the natural permutation module and hook Specht modules inside them.

Basis of the r-th exterior power: wedge monomials e_i for strictly increasing
multi-indices i, ranked lexicographically.  The hook Specht module for the
partition (n-r, 1^r) is the kernel of the boundary map delta_r, with standard
basis delta(e_1 ^ e_j) for multi-indices j avoiding 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .permgrp import Perm


# ---------------------------------------------------------------------------
# multi-indices


@lru_cache(maxsize=None)
def _binom_table(n):
    t = np.zeros((n + 2, n + 2), dtype=np.int64)
    for a in range(n + 2):
        for b in range(a + 1):
            t[a, b] = comb(a, b)
    return t


@dataclass(frozen=True)
class MultiIndex:
    """Strictly increasing 1-based tuple ``(i_1 < ... < i_r)`` inside ``1..n``."""

    n: int
    idx: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.idx)
        object.__setattr__(self, "idx", idx)
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"multi-index {idx} is not strictly increasing")
        if idx and (idx[0] < 1 or idx[-1] > self.n):
            raise ValueError(f"multi-index {idx} leaves 1..{self.n}")

    @property
    def r(self):
        return len(self.idx)

    def rank(self) -> int:
        """Lexicographic rank among r-subsets of 1..n."""
        t = _binom_table(self.n)
        n, r = self.n, self.r
        total = 0
        prev = 0
        for k, i in enumerate(self.idx):
            for j in range(prev + 1, i):
                total += t[n - j, r - k - 1]
            prev = i
        return int(total)

    @classmethod
    def unrank(cls, n: int, r: int, k: int) -> "MultiIndex":
        if not 0 <= k < comb(n, r):
            raise ValueError(f"rank {k} out of range for C({n},{r})")
        t = _binom_table(n)
        out = []
        j = 1
        for pos in range(r):
            while True:
                block = int(t[n - j, r - pos - 1])
                if k < block:
                    break
                k -= block
                j += 1
            out.append(j)
            j += 1
        return cls(n, tuple(out))


@lru_cache(maxsize=None)
def basis_indices(n: int, r: int):
    """All r-subsets of 0..n-1 in lexicographic order, shape (C(n,r), r)."""
    if r == 0:
        return np.zeros((1, 0), dtype=np.intp)
    return np.array(list(combinations(range(n), r)), dtype=np.intp).reshape(-1, r)


@lru_cache(maxsize=None)
def _mask_lookup(n: int, r: int):
    rows = basis_indices(n, r)
    masks = (np.left_shift(1, rows)).sum(axis=1) if r else np.zeros(1, dtype=np.int64)
    if n <= 22:
        table = np.full(1 << n, -1, dtype=np.int64)
        table[masks] = np.arange(len(rows))
        return table
    return {int(m): i for i, m in enumerate(masks)}


def rank_rows(n, r, rows):
    """Ranks of the (sorted or unsorted) 0-based index rows."""
    rows = np.asarray(rows, dtype=np.int64)
    if r == 0:
        return np.zeros(rows.shape[0] if rows.ndim == 2 else 1, dtype=np.int64)
    rows = rows.reshape(-1, r)
    masks = np.left_shift(1, rows).sum(axis=1)
    table = _mask_lookup(n, r)
    if isinstance(table, dict):
        return np.array([table[int(m)] for m in masks], dtype=np.int64)
    return table[masks]


def _sort_sign(rows):
    """Sign of the permutation sorting each row (rows of distinct entries)."""
    rows = np.asarray(rows)
    r = rows.shape[1]
    inv = np.zeros(rows.shape[0], dtype=np.int64)
    for a in range(r):
        for b in range(a + 1, r):
            inv += rows[:, a] > rows[:, b]
    return np.where(inv % 2, -1, 1)


# ---------------------------------------------------------------------------
# wedge vectors


_TERM_RE = re.compile(r"^(\d+)\*\[([0-9,\s]*)\]$")


@dataclass(frozen=True, eq=False)
class WedgeVector:
    """Element of the r-th exterior power of F_p^n in the monomial basis."""

    n: int
    r: int
    p: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.int64) % self.p
        if c.shape != (comb(self.n, self.r),):
            raise ValueError(f"coefficient vector has shape {c.shape}, expected ({comb(self.n, self.r)},)")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, n, r, p):
        return cls(n, r, p, np.zeros(comb(n, r), dtype=np.int64))

    @classmethod
    def monomial(cls, n, p, idx, coeff=1):
        """``coeff * e_{i_1} ^ ... ^ e_{i_r}`` for 1-based indices in any order."""
        idx = list(idx)
        if len(set(idx)) != len(idx):
            return cls.zero(n, len(idx), p)
        r = len(idx)
        row = np.array([[i - 1 for i in idx]], dtype=np.int64)
        c = np.zeros(comb(n, r), dtype=np.int64)
        c[rank_rows(n, r, row)[0]] = coeff * _sort_sign(row)[0]
        return cls(n, r, p, c)

    @classmethod
    def scalar(cls, n, p, c):
        return cls(n, 0, p, np.array([c]))

    def _check(self, other):
        if (self.n, self.r, self.p) != (other.n, other.r, other.p):
            raise ValueError("wedge vectors live in different spaces")

    def __add__(self, other):
        self._check(other)
        return WedgeVector(self.n, self.r, self.p, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check(other)
        return WedgeVector(self.n, self.r, self.p, self.coeffs - other.coeffs)

    def __neg__(self):
        return WedgeVector(self.n, self.r, self.p, -self.coeffs)

    def __mul__(self, c):
        return WedgeVector(self.n, self.r, self.p, self.coeffs * int(c))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, WedgeVector):
            return NotImplemented
        return (self.n, self.r, self.p) == (other.n, other.r, other.p) and bool(
            np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None

    def is_zero(self):
        return not self.coeffs.any()

    def coefficient(self, idx) -> int:
        """Coefficient of the monomial with the given increasing 1-based indices."""
        mi = idx if isinstance(idx, MultiIndex) else MultiIndex(self.n, tuple(idx))
        return int(self.coeffs[mi.rank()])

    def terms(self):
        """``[(multi-index tuple, coeff)]`` for nonzero coefficients, in rank order."""
        rows = basis_indices(self.n, self.r)
        return [(tuple(int(a) + 1 for a in rows[k]), int(self.coeffs[k]))
                for k in np.flatnonzero(self.coeffs)]

    def to_text(self) -> str:
        terms = self.terms()
        if not terms:
            return "0"
        return " + ".join(f"{c}*[{','.join(map(str, idx))}]" for idx, c in terms)

    @classmethod
    def from_text(cls, text, n, r, p):
        text = text.strip()
        out = np.zeros(comb(n, r), dtype=np.int64)
        if text == "0":
            return cls(n, r, p, out)
        for part in text.split("+"):
            m = _TERM_RE.match(part.strip())
            if not m:
                raise ValueError(f"malformed wedge term {part.strip()!r}")
            idx = [int(x) for x in m.group(2).split(",") if x.strip()]
            if len(idx) != r:
                raise ValueError(f"term {part.strip()!r} has degree {len(idx)}, expected {r}")
            out = out + WedgeVector.monomial(n, p, idx, int(m.group(1))).coeffs
        return cls(n, r, p, out)

    def __repr__(self):
        return f"WedgeVector(n={self.n}, r={self.r}, p={self.p}, {self.to_text()})"


# ---------------------------------------------------------------------------
# group action


@lru_cache(maxsize=4096)
def _action_table(img: tuple, r: int):
    n = len(img)
    rows = basis_indices(n, r)
    if r == 0:
        return np.zeros(1, dtype=np.int64), np.ones(1, dtype=np.int64)
    mapped = np.asarray(img, dtype=np.intp)[rows]
    return rank_rows(n, r, mapped), _sort_sign(mapped)


def act(sigma: Perm, v: WedgeVector) -> WedgeVector:
    """``sigma . v`` with ``sigma . e_i = sign * e_{sort(sigma(i))}``."""
    if sigma.degree != v.n:
        raise ValueError(f"permutation of degree {sigma.degree} acting on n = {v.n}")
    target, sgn = _action_table(sigma.img, v.r)
    out = np.zeros_like(v.coeffs)
    np.add.at(out, target, sgn * v.coeffs)
    return WedgeVector(v.n, v.r, v.p, out)


def action_matrix(sigma: Perm, r: int, p: int):
    """Matrix of sigma on the r-th exterior power (columns = images of basis vectors)."""
    target, sgn = _action_table(sigma.img, r)
    dim = len(target)
    m = np.zeros((dim, dim), dtype=np.int64)
    m[target, np.arange(dim)] = sgn % p
    return m


# ---------------------------------------------------------------------------
# boundary map


@lru_cache(maxsize=None)
def _delta_table(n, r):
    rows = basis_indices(n, r)
    targets = np.empty((len(rows), r), dtype=np.int64)
    for a in range(r):
        rest = np.delete(rows, a, axis=1)
        targets[:, a] = rank_rows(n, r - 1, rest)
    signs = np.array([1 if a % 2 == 0 else -1 for a in range(r)], dtype=np.int64)
    return targets, signs


def delta_matrix(n, r, p):
    """Matrix of delta_r from degree r to degree r-1 (shape C(n,r-1) x C(n,r))."""
    if r < 1:
        raise ValueError("delta is defined for r >= 1")
    targets, signs = _delta_table(n, r)
    m = np.zeros((comb(n, r - 1), comb(n, r)), dtype=np.int64)
    cols = np.repeat(np.arange(targets.shape[0]), r)
    np.add.at(m, (targets.reshape(-1), cols), np.tile(signs, targets.shape[0]))
    return m % p


def delta(v: WedgeVector) -> WedgeVector:
    if v.r < 1:
        raise ValueError("delta is defined for r >= 1")
    targets, signs = _delta_table(v.n, v.r)
    out = np.zeros(comb(v.n, v.r - 1), dtype=np.int64)
    np.add.at(out, targets.reshape(-1), (v.coeffs[:, None] * signs[None, :]).reshape(-1))
    return WedgeVector(v.n, v.r - 1, v.p, out)


def wedge(u: WedgeVector, v: WedgeVector) -> WedgeVector:
    if (u.n, u.p) != (v.n, v.p):
        raise ValueError("wedge of vectors from different spaces")
    n, r, s, p = u.n, u.r, v.r, u.p
    out = np.zeros(comb(n, r + s), dtype=np.int64)
    if r + s > n:
        return WedgeVector(n, r + s, p, out)
    ru, rv = basis_indices(n, r), basis_indices(n, s)
    iu, iv = np.flatnonzero(u.coeffs), np.flatnonzero(v.coeffs)
    if len(iu) and len(iv):
        a = np.repeat(iu, len(iv))
        b = np.tile(iv, len(iu))
        rows = np.hstack([ru[a], rv[b]])
        if r + s:
            ok = np.array([len(set(row)) == r + s for row in rows.tolist()], dtype=bool)
        else:
            ok = np.ones(len(rows), dtype=bool)
        rows, a, b = rows[ok], a[ok], b[ok]
        if len(rows):
            tgt = rank_rows(n, r + s, rows)
            np.add.at(out, tgt, _sort_sign(rows) * u.coeffs[a] * v.coeffs[b] % p)
    return WedgeVector(n, r + s, p, out)


def delta_product_rule_check(u: WedgeVector, v: WedgeVector) -> bool:
    """Whether delta(u ^ v) = delta(u) ^ v + (-1)^r u ^ delta(v)."""
    lhs = delta(wedge(u, v))
    rhs = wedge(delta(u), v) + wedge(u, delta(v)) * (-1) ** u.r
    return lhs == rhs


def bilinear_form(u: WedgeVector, v: WedgeVector) -> int:
    """Dot product in the monomial basis."""
    u._check(v)
    return int((u.coeffs @ v.coeffs) % u.p)


# ---------------------------------------------------------------------------
# hook Specht modules


@lru_cache(maxsize=None)
def standard_positions(n, r):
    """Ranks (in degree r) of the multi-indices avoiding 1."""
    rows = basis_indices(n, r)
    return np.flatnonzero(rows[:, 0] > 0) if r else np.zeros(0, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class HookSpechtModule:
    """Kernel of delta_r with its standard basis delta(e_1 ^ e_j) as columns of ``basis``."""

    n: int
    r: int
    p: int
    basis: np.ndarray
    j_positions: np.ndarray

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def ambient_dim(self):
        return self.basis.shape[0]

    def standard_indices(self):
        rows = basis_indices(self.n, self.r)
        return [tuple(int(a) + 1 for a in rows[k]) for k in self.j_positions]

    def column(self, k) -> WedgeVector:
        return WedgeVector(self.n, self.r, self.p, self.basis[:, k])

    def action(self, sigma: Perm):
        """Matrix of sigma in standard-basis coordinates."""
        img = (action_matrix(sigma, self.r, self.p) @ self.basis) % self.p
        return img[self.j_positions, :]

    def embed(self, coords):
        """Ambient wedge vector with the given standard coordinates."""
        return WedgeVector(self.n, self.r, self.p, self.basis @ np.asarray(coords, dtype=np.int64))


def hook_specht(n: int, r: int, p: int) -> HookSpechtModule:
    if not 1 <= r <= n - 1:
        raise ValueError(f"need 1 <= r <= n-1, got r = {r}, n = {n}")
    dm = delta_matrix(n, r + 1, p)
    first = np.flatnonzero(basis_indices(n, r + 1)[:, 0] == 0)
    basis = dm[:, first]
    return HookSpechtModule(n, r, p, basis, standard_positions(n, r))


def rewrite_to_standard(u: WedgeVector):
    """Standard-basis coordinates of u in ker delta: its monomial coefficients on J."""
    if u.r < 1 or u.r >= u.n:
        raise ValueError("degree out of range for a hook Specht module")
    if not delta(u).is_zero():
        raise ValueError("vector is not in the kernel of delta")
    return u.coeffs[standard_positions(u.n, u.r)].copy()


def from_standard(n, r, p, mu) -> WedgeVector:
    return hook_specht(n, r, p).embed(mu)


# ---------------------------------------------------------------------------
# explicit vectors for the p^2-point construction


def vector_w(p: int, k: int) -> WedgeVector:
    """Wedge of the p column sums of the p x p grid on 1..p^2, inside degree p with n = kp."""
    if k < p:
        raise ValueError(f"need k >= p, got k = {k}, p = {p}")
    n = k * p
    result = WedgeVector.scalar(n, p, 1)
    for a in range(1, p + 1):
        factor = np.zeros(n, dtype=np.int64)
        factor[[(b * p + a) - 1 for b in range(p)]] = 1
        result = wedge(result, WedgeVector(n, 1, p, factor))
    return result


def vector_z(p: int, m: int, n: int) -> WedgeVector:
    """Signed sum over X of e_{i(X)}, where i(X)_a = a if a in X else (m-1)p + a."""
    if not 2 <= m <= p:
        raise ValueError(f"need 2 <= m <= p, got m = {m}")
    if n < p * p:
        raise ValueError(f"need n >= p^2, got n = {n}")
    out = WedgeVector.zero(n, p, p)
    for size in range(p + 1):
        for X in combinations(range(1, p + 1), size):
            idx = [a if a in X else (m - 1) * p + a for a in range(1, p + 1)]
            out = out + WedgeVector.monomial(n, p, idx, (-1) ** size)
    return out


def vector_wj(p: int, j, n: int, alpha: Perm | None = None) -> WedgeVector:
    """Sum over l of alpha^l delta(e_1 ^ e_j) for j avoiding 1."""
    j = tuple(j.idx if isinstance(j, MultiIndex) else j)
    if n < p * p:
        raise ValueError(f"need n >= p^2, got n = {n}")
    if len(j) != p:
        raise ValueError(f"multi-index must have length {p}")
    MultiIndex(n, j)
    if 1 in j:
        raise ValueError("multi-index must avoid 1")
    if alpha is None:
        from .permgrp import grid_alpha
        alpha = grid_alpha(p, n)
    base = delta(WedgeVector.monomial(n, p, (1,) + j))
    out = WedgeVector.zero(n, p, p)
    cur = base
    for _ in range(p):
        out = out + cur
        cur = act(alpha, cur)
    return out


def filtration_level(idx, p) -> int:
    """Number of entries of the multi-index lying in 1..p."""
    return sum(1 for i in idx if i <= p)


def filtration_component(v: WedgeVector, p: int | None = None):
    """Split v = v_0 + ... + v_p with v_c supported on monomials meeting 1..p in c points."""
    p = v.p if p is None else p
    rows = basis_indices(v.n, v.r)
    level = (rows < p).sum(axis=1) if v.r else np.zeros(1, dtype=np.int64)
    comps = []
    for c in range(v.r + 1):
        comps.append(WedgeVector(v.n, v.r, v.p, np.where(level == c, v.coeffs, 0)))
    return comps
