"""Exact linear algebra over F_p and F_{p^e}, and generic ranks of polynomial matrices.

Matrices are plain 2-D numpy ``int64`` arrays; the field is passed alongside
as the prime ``p``.  Entries are always reduced into ``0..p-1`` on output.
Subspace bases are returned as arrays whose *rows* are the basis vectors.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import kernels

MAX_PRIME = 2**31 - 1
MAX_TABLE_FIELD = 2**24
BAREISS_CUTOFF = 64
DEFAULT_BAREISS_BUDGET = 400_000


class NoSolution(ArithmeticError):
    """The linear system is inconsistent."""


class CertificationMismatch(RuntimeError):
    """Randomized and fraction-free generic ranks disagree (internal error)."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _check_prime(p):
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"{p!r} is not a prime")
    if p > MAX_PRIME:
        raise ValueError(f"prime {p} exceeds the supported bound 2^31-1")
    return int(p)


class PrimeField:
    """The prime field F_p."""

    def __init__(self, p: int):
        self.p = _check_prime(p)

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def reduce(self, x):
        return np.asarray(x, dtype=np.int64) % self.p

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, -1, self.p)


# ---------------------------------------------------------------------------
# dense matrices over F_p


def _as_matrix(m, p):
    a = np.asarray(m, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    return a % p


def rref(m, p):
    """Return ``(R, pivots)``: reduced row echelon form over F_p."""
    p = _check_prime(p)
    a = _as_matrix(m, p)
    if p == 2:
        return kernels.rref_gf2(a)
    return kernels.rref_modp(a, p)


def rank(m, p) -> int:
    p = _check_prime(p)
    a = _as_matrix(m, p)
    if a.size == 0:
        return 0
    if p == 2:
        return len(kernels.rref_gf2(a)[1])
    return kernels.rank_modp(a, p)


def nullspace(m, p):
    """Basis (as rows) of ``{x : m @ x = 0}`` over F_p."""
    p = _check_prime(p)
    a = _as_matrix(m, p)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, pc in enumerate(pivots):
            basis[k, pc] = (-r[row, f]) % p
    return basis


def row_space(m, p):
    """Echelon basis (rows) of the row space."""
    r, pivots = rref(m, p)
    return r[: len(pivots)].copy()


def solve(a, b, p):
    """One solution ``x`` of ``a @ x = b`` over F_p; raises :class:`NoSolution`."""
    p = _check_prime(p)
    a = _as_matrix(a, p)
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {a.shape[0]}")
    cols = a.shape[1]
    r, pivots = rref(np.hstack([a, b[:, None]]), p)
    if cols in pivots:
        raise NoSolution("inconsistent linear system")
    x = np.zeros(cols, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, cols]
    return x


def matmul(a, b, p):
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def matpow(a, k, p):
    a = np.asarray(a, dtype=np.int64) % p
    result = np.eye(a.shape[0], dtype=np.int64)
    while k:
        if k & 1:
            result = (result @ a) % p
        a = (a @ a) % p
        k >>= 1
    return result


def in_span(basis, vectors, p) -> bool:
    """True when every row of ``vectors`` lies in the row span of ``basis``."""
    basis = np.asarray(basis, dtype=np.int64).reshape(-1, np.shape(vectors)[-1])
    vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, basis.shape[1])
    if vectors.shape[0] == 0:
        return True
    if basis.shape[0] == 0:
        return not np.any(vectors % p)
    return rank(np.vstack([basis, vectors]), p) == rank(basis, p)


# ---------------------------------------------------------------------------
# univariate polynomials over F_p (coefficient lists, low degree first)


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = _trim([x % p for x in a])
    inv = pow(f[-1], -1, p)
    df = len(f) - 1
    while len(a) - 1 >= df:
        c = (a[-1] * inv) % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a, k, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while k:
        if k & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        k >>= 1
    return result


def is_irreducible(f, p) -> bool:
    """Ben-Or test for a monic polynomial given low-degree-first."""
    f = _trim([c % p for c in f])
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    h = [0, 1]
    for _ in range(1, e // 2 + 1):
        h = _ppowmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _trim(diff), p)
        if len(g) > 1:
            return False
    return True


def least_irreducible(p: int, e: int) -> list[int]:
    """Lexicographically least monic irreducible of degree ``e``.

    Candidates ``x^e + c_{e-1} x^{e-1} + ... + c_0`` are ordered by the tuple
    ``(c_{e-1}, ..., c_0)``.
    """
    for code in range(p**e):
        coeffs = [(code // p**k) % p for k in range(e)] + [1]
        if coeffs[0] == 0 and e > 1:
            continue
        if is_irreducible(coeffs, p):
            return coeffs
    raise RuntimeError("no irreducible polynomial found")  # pragma: no cover


class ExtField:
    """F_{p^e} with elements encoded as integers ``sum c_k p^k`` (c_k the x^k coefficient).

    Arithmetic goes through discrete log / Zech log tables, so ``p^e`` is
    capped at 2^24.
    """

    def __init__(self, p: int, e: int = 1, modulus=None):
        self.p = _check_prime(p)
        if e < 1:
            raise ValueError("degree must be >= 1")
        self.e = int(e)
        self.q = self.p**self.e
        if self.q > MAX_TABLE_FIELD:
            raise ValueError(f"field of size {self.q} exceeds table limit")
        if modulus is None:
            modulus = least_irreducible(self.p, self.e)
        modulus = [int(c) % self.p for c in modulus]
        if len(modulus) != self.e + 1 or modulus[-1] != 1 or not is_irreducible(modulus, self.p):
            raise ValueError(f"{modulus} is not a monic irreducible of degree {self.e}")
        self.modulus = tuple(modulus)
        self._powers = self.p ** np.arange(self.e, dtype=np.int64)
        codes = np.arange(self.q, dtype=np.int64)
        self.digits = (codes[:, None] // self._powers[None, :]) % self.p
        self._build_tables()

    def __repr__(self):
        return f"ExtField({self.p}, {self.e})"

    def _mul_slow(self, a: int, b: int) -> int:
        da = [int(x) for x in self.digits[a]]
        db = [int(x) for x in self.digits[b]]
        prod = _pmod(_pmul(_trim(da), _trim(db), self.p), list(self.modulus), self.p)
        return sum(c * self.p**k for k, c in enumerate(prod))

    def _build_tables(self):
        q = self.q
        qm1 = q - 1
        for g in range(2 if q > 2 else 1, q):
            exp = np.empty(qm1, dtype=np.int64)
            cur = 1
            ok = True
            for k in range(qm1):
                exp[k] = cur
                cur = self._mul_slow(cur, g)
                if cur == 1 and k < qm1 - 1:
                    ok = False
                    break
            if ok and cur == 1:
                break
        else:  # pragma: no cover
            raise RuntimeError("no primitive element")
        self.generator = int(exp[1]) if qm1 > 1 else 1
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(qm1, dtype=np.int64)
        self.exp = exp
        self.log = log
        self.qm1 = qm1
        ones = self.add(np.ones(qm1, dtype=np.int64), exp)
        self.zech = log[ones]
        self.neg_one_log = int(log[self.p - 1]) if self.p > 2 else 0

    # vectorized element arithmetic on integer codes
    def encode(self, digits):
        return (np.asarray(digits, dtype=np.int64) % self.p) @ self._powers

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return self.encode((self.digits[a] + self.digits[b]) % self.p)

    def neg(self, a):
        return self.encode((-self.digits[np.asarray(a, dtype=np.int64)]) % self.p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % self.qm1]
        return np.where((la < 0) | (lb < 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse")
        return self.exp[(-self.log[a]) % self.qm1]

    def pow(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        la = self.log[a]
        if k == 0:
            return np.ones_like(a)
        out = self.exp[(la * k) % self.qm1]
        return np.where(la < 0, 0, out)

    def scale(self, a, s):
        """Multiply field elements ``a`` by base-field integers ``s``."""
        return self.encode((self.digits[np.asarray(a, dtype=np.int64)] * (np.asarray(s)[..., None] % self.p)) % self.p)

    def random(self, rng, size=None):
        return rng.integers(0, self.q, size=size, dtype=np.int64)

    def to_log(self, a):
        return self.log[np.asarray(a, dtype=np.int64)]

    def rank(self, a) -> int:
        """Rank of a matrix of element codes."""
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return rank(a, self.p)
        return kernels.rank_gfq_log(self.to_log(a), self.qm1, self.zech, self.neg_one_log)


# ---------------------------------------------------------------------------
# multivariate polynomials


class MultiPoly:
    """Sparse polynomial over F_p in ``nvars`` indeterminates.

    ``terms`` maps exponent tuples to nonzero coefficients in ``1..p-1``.
    Iteration and printing use descending lexicographic order.
    """

    __slots__ = ("p", "nvars", "terms")

    def __init__(self, p: int, nvars: int, terms=None):
        self.p = p
        self.nvars = nvars
        clean = {}
        if terms:
            for mono, c in terms.items():
                c %= p
                if c:
                    if len(mono) != nvars:
                        raise ValueError(f"exponent {mono} has wrong length")
                    clean[tuple(mono)] = c
        self.terms = clean

    @classmethod
    def constant(cls, p, nvars, c):
        return cls(p, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, p, nvars, i, c=1):
        mono = [0] * nvars
        mono[i] = 1
        return cls(p, nvars, {tuple(mono): c})

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.p != self.p or other.nvars != self.nvars:
                raise ValueError("incompatible polynomial rings")
            return other
        return MultiPoly.constant(self.p, self.nvars, int(other))

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = MultiPoly.constant(self.p, self.nvars, int(other))
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.p == other.p and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = (out.get(m, 0) + c) % self.p
        return MultiPoly(self.p, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.p, self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return MultiPoly(self.p, self.nvars, {m: c * int(other) for m, c in self.terms.items()})
        other = self._coerce(other)
        p = self.p
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return MultiPoly(p, self.nvars, out)

    __rmul__ = __mul__

    def exact_div(self, d: "MultiPoly") -> "MultiPoly":
        """Quotient ``self / d``; raises ``ValueError`` if ``d`` does not divide."""
        d = self._coerce(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        lt_d = max(d.terms)
        inv = pow(d.terms[lt_d], -1, p)
        rem = dict(self.terms)
        quot = {}
        while rem:
            lt = max(rem)
            shift = tuple(a - b for a, b in zip(lt, lt_d))
            if min(shift) < 0:
                raise ValueError("polynomial division is not exact")
            c = (rem[lt] * inv) % p
            quot[shift] = c
            for m, dc in d.terms.items():
                mm = tuple(a + b for a, b in zip(m, shift))
                v = (rem.get(mm, 0) - c * dc) % p
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return MultiPoly(p, self.nvars, quot)

    def evaluate(self, point, field: ExtField | None = None):
        """Value at ``point``; codes in ``field`` if given, else integers mod p."""
        if field is None:
            total = 0
            for m, c in self.terms.items():
                v = c
                for x, k in zip(point, m):
                    v = v * pow(int(x), k, self.p) % self.p
                total = (total + v) % self.p
            return total
        total = 0
        for m, c in self.terms.items():
            v = int(field.scale(1, c))
            for x, k in zip(point, m):
                if k:
                    v = int(field.mul(v, field.pow(int(x), k)))
            total = int(field.add(total, v))
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [f"a{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(m) if k]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)


class PolyMatrix:
    """Matrix with MultiPoly entries stored as ``{exponent: F_p coefficient matrix}``."""

    def __init__(self, p: int, nvars: int, shape, terms=None):
        self.p = p
        self.nvars = nvars
        self.shape = tuple(shape)
        self.terms = {}
        for mono, mat in (terms or {}).items():
            mat = np.asarray(mat, dtype=np.int64) % p
            if mat.shape != self.shape:
                raise ValueError("coefficient matrix has the wrong shape")
            if np.any(mat):
                self.terms[tuple(mono)] = mat

    @classmethod
    def linear(cls, p, mats):
        """``sum_i a_i * mats[i]``."""
        n = len(mats)
        shape = np.shape(mats[0])
        terms = {}
        for i, m in enumerate(mats):
            mono = [0] * n
            mono[i] = 1
            terms[tuple(mono)] = m
        return cls(p, n, shape, terms)

    @classmethod
    def from_entries(cls, entries):
        entries = [list(row) for row in entries]
        first = entries[0][0]
        rows, cols = len(entries), len(entries[0])
        terms = {}
        for i, row in enumerate(entries):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, f in enumerate(row):
                for m, c in f.terms.items():
                    if m not in terms:
                        terms[m] = np.zeros((rows, cols), dtype=np.int64)
                    terms[m][i, j] = c
        return cls(first.p, first.nvars, (rows, cols), terms)

    def entries(self):
        rows, cols = self.shape
        out = [[{} for _ in range(cols)] for _ in range(rows)]
        for m, mat in self.terms.items():
            for i, j in zip(*np.nonzero(mat)):
                out[i][j][m] = int(mat[i, j])
        return [[MultiPoly(self.p, self.nvars, t) for t in row] for row in out]

    def degree(self):
        return max((sum(m) for m in self.terms), default=0)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError("shape mismatch")
        out = {}
        for m1, a in self.terms.items():
            for m2, b in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                prod = a @ b
                out[m] = (out[m] + prod) % self.p if m in out else prod % self.p
        return PolyMatrix(self.p, self.nvars, (self.shape[0], other.shape[1]), out)

    def power(self, k: int) -> "PolyMatrix":
        result = self
        for _ in range(k - 1):
            result = result @ self
        return result

    def is_zero(self):
        return not self.terms

    def evaluate(self, point, field: ExtField):
        """Matrix of field codes obtained by substituting ``point`` (codes)."""
        rows, cols = self.shape
        acc = np.zeros((rows, cols, field.e), dtype=np.int64)
        for m, mat in self.terms.items():
            v = 1
            for x, k in zip(point, m):
                if k:
                    v = int(field.mul(v, field.pow(int(x), k)))
            if v == 0:
                continue
            acc += mat[:, :, None] * field.digits[v][None, None, :]
            acc %= field.p
        return field.encode(acc)


@dataclass(frozen=True)
class RankResult:
    rank: int
    certified: bool
    trials: int
    field_size: int

    def __int__(self):
        return self.rank


def _field_degree(p, bound):
    e = 1
    while p**e < bound:
        e += 1
    return e


def bareiss_rank(entries, budget=DEFAULT_BAREISS_BUDGET):
    """Rank by fraction-free elimination over F_p[a_1..a_n].

    Returns ``None`` once the number of term multiplications exceeds ``budget``.
    """
    a = [list(row) for row in entries]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0 or cols == 0:
        return 0
    p, nv = a[0][0].p, a[0][0].nvars
    prev = MultiPoly.constant(p, nv, 1)
    work = 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        cands = [i for i in range(r, rows) if a[i][c]]
        if not cands:
            continue
        piv = min(cands, key=lambda i: len(a[i][c]))
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        for i in range(r + 1, rows):
            ai = a[i]
            lead = ai[c]
            for j in range(c + 1, cols):
                work += len(pr[c]) * len(ai[j]) + len(lead) * len(pr[j])
                if work > budget:
                    return None
                num = pr[c] * ai[j] - lead * pr[j]
                if num:
                    work += len(num) * len(prev)
                    ai[j] = num.exact_div(prev)
                else:
                    ai[j] = num
            ai[c] = MultiPoly(p, nv)
        prev = pr[c]
        r += 1
    return r


def generic_rank(m, trials: int = 8, seed: int = 0, certify: bool = True,
                 budget: int = DEFAULT_BAREISS_BUDGET, workers: int = 1) -> RankResult:
    """Rank over the rational function field F_p(a_1, ..., a_n).

    ``m`` is a :class:`PolyMatrix` or a nested list of :class:`MultiPoly`.
    Evaluations happen at uniform points of F_{p^e} with
    ``p^e >= 4 * d * min(rows, cols)``; the maximum over ``trials`` is returned.
    Matrices up to 64x64 are also checked by fraction-free elimination unless
    that exceeds ``budget`` term multiplications.
    """
    if not isinstance(m, PolyMatrix):
        m = PolyMatrix.from_entries(m)
    rows, cols = m.shape
    if rows == 0 or cols == 0 or m.is_zero():
        return RankResult(0, True, 0, m.p)
    top = min(rows, cols)
    d = max(m.degree(), 1)
    e = _field_degree(m.p, 4 * d * top)
    field = ExtField(m.p, e) if m.p**e <= MAX_TABLE_FIELD else None
    if field is None:
        raise ValueError("required evaluation field is too large")

    def one_trial(t):
        rng = np.random.default_rng([seed, t])
        point = field.random(rng, size=m.nvars)
        return field.rank(m.evaluate(point, field))

    best = 0
    done = 0
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ranks = list(pool.map(one_trial, range(trials)))
        best, done = max(ranks, default=0), trials
    else:
        for t in range(trials):
            best = max(best, one_trial(t))
            done += 1
            if best == top:
                break

    certified = False
    if certify and rows <= BAREISS_CUTOFF and cols <= BAREISS_CUTOFF:
        exact = bareiss_rank(m.entries(), budget)
        if exact is not None:
            if exact != best:
                raise CertificationMismatch(
                    f"randomized rank {best} but fraction-free rank {exact}")
            certified = True
    return RankResult(best, certified, done, field.q)


def frobenius_holds(field: ExtField, x: int, y: int) -> bool:
    p = field.p
    lhs = field.pow(field.add(x, y), p)
    rhs = field.add(field.pow(x, p), field.pow(y, p))
    return int(lhs) == int(rhs)


def all_vectors(p, n):
    """Iterate over F_p^n (small n only)."""
    return (np.array(v, dtype=np.int64) for v in product(range(p), repeat=n))
