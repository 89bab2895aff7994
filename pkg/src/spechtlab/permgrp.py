"""Permutations, small permutation groups, and elementary abelian p-subgroups of S_n and A_n.

Points are 1-based in all text I/O (cycle notation, orbit listings) and
0-based internally.  Products act on the left: ``(s * t)(x) = s(t(x))``.
Groups are materialized as full element arrays; there is no Schreier-Sims.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations, product

import numpy as np

ORDER_CAP = 2**22
SUBGROUP_CAP = 2**20

SYM = "sym"
ALT = "alt"


class EnumerationCapExceeded(RuntimeError):
    """A group or subgroup list grew past the configured cap."""


class ReducedToSymmetric(ValueError):
    """Alternating-group question for odd p, which reduces to the symmetric group."""


def _dtype(n):
    return np.uint8 if n <= 255 else np.int32


# ---------------------------------------------------------------------------
# permutations


class Perm:
    """A permutation of {1..n}, stored as a tuple of 0-based images."""

    __slots__ = ("img",)

    def __init__(self, images):
        img = tuple(int(x) for x in images)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a permutation: {img}")
        self.img = img

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n, cycles):
        """Build from cycles of 1-based points."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= n:
                    raise ValueError(f"point {a} outside 1..{n}")
                if a in seen:
                    raise ValueError(f"repeated point {a}")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return cls(img)

    @property
    def degree(self):
        return len(self.img)

    @property
    def array(self):
        return np.array(self.img, dtype=_dtype(self.degree))

    def __call__(self, point):
        """Image of a 1-based point."""
        return self.img[point - 1] + 1

    def __mul__(self, other: "Perm") -> "Perm":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        s = self.img
        return Perm(s[x] for x in other.img)

    def inverse(self):
        inv = [0] * self.degree
        for i, x in enumerate(self.img):
            inv[x] = i
        return Perm(inv)

    def __pow__(self, k):
        result = Perm.identity(self.degree)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = base * result
        return result

    def conjugate(self, g: "Perm") -> "Perm":
        """``g * self * g^-1``."""
        return g * self * g.inverse()

    def __eq__(self, other):
        return isinstance(other, Perm) and self.img == other.img

    def __hash__(self):
        return hash(self.img)

    def is_identity(self):
        return all(i == x for i, x in enumerate(self.img))

    def cycles(self):
        """Nontrivial cycles as tuples of 1-based points, each starting at its least point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.img[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self.img[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.img[x]
            out.append(tuple(a + 1 for a in cyc))
        return out

    def cycle_type(self):
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self):
        return math.lcm(*self.cycle_type()) if self.cycles() else 1

    def sign(self):
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def support(self):
        return frozenset(i + 1 for i, x in enumerate(self.img) if i != x)

    def __repr__(self):
        return f"Perm({format_cycles(self)!r}, n={self.degree})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int | None = None) -> Perm:
    """Parse cycle notation such as ``"(1,2,3)(4,5)"`` or ``"()"``.

    Without ``n`` the degree is the largest point mentioned.
    """
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ValueError("empty permutation text")
    cycles = []
    pos = 0
    for m in _CYCLE_RE.finditer(compact):
        if m.start() != pos:
            raise ValueError(f"malformed cycle text: {text!r}")
        pos = m.end()
        body = m.group(1)
        if body == "":
            cycles.append(None)
            continue
        parts = body.split(",")
        if len(parts) < 2 or not all(p.isdigit() for p in parts):
            raise ValueError(f"malformed cycle {m.group(0)!r}")
        cycles.append([int(p) for p in parts])
    if pos != len(compact):
        raise ValueError(f"malformed cycle text: {text!r}")
    if None in cycles and len(cycles) > 1:
        raise ValueError(f"malformed cycle text: {text!r}")
    cycles = [c for c in cycles if c is not None]
    points = [a for c in cycles for a in c]
    if len(points) != len(set(points)):
        dup = next(a for a, k in Counter(points).items() if k > 1)
        raise ValueError(f"repeated point {dup} in {text!r}")
    if any(a < 1 for a in points):
        raise ValueError("points are 1-based")
    top = max(points, default=0)
    if n is None:
        n = max(top, 1)
    elif top > n:
        raise ValueError(f"point {top} exceeds degree {n}")
    return Perm.from_cycles(n, cycles)


def format_cycles(perm: Perm) -> str:
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)


def sign(perm: Perm) -> int:
    return perm.sign()


# array helpers: rows are 0-based image tuples


def _inverse_rows(a):
    inv = np.empty_like(a)
    rows = np.arange(a.shape[0])[:, None]
    inv[rows, a.astype(np.intp)] = np.arange(a.shape[1], dtype=a.dtype)[None, :]
    return inv


def _row_parity(a):
    """Parity (0 even, 1 odd) of each permutation row."""
    a = a.astype(np.intp)
    m, n = a.shape
    seen = np.zeros((m, n), dtype=bool)
    cycles = np.zeros(m, dtype=np.int64)
    idx = np.arange(m)
    for start in range(n):
        new = ~seen[:, start]
        cycles += new
        x = np.full(m, start)
        for _ in range(n):
            seen[idx, x] |= new
            x = a[idx, x]
    return (n - cycles) % 2


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class OrbitProfile:
    sizes: tuple
    regular: tuple
    fixed_points: int
    orbits: tuple = field(default=(), compare=False)

    def count(self, size):
        return sum(1 for s in self.sizes if s == size)


class PermGroup:
    """Subgroup of S_n given by generators, with a lazily enumerated element array."""

    def __init__(self, n: int, gens=(), kind: str | None = None, elements=None):
        self.n = n
        gens = [g if isinstance(g, Perm) else Perm(g) for g in gens]
        for g in gens:
            if g.degree != n:
                raise ValueError(f"generator of degree {g.degree} in a group of degree {n}")
        self.gens = [g for g in gens if not g.is_identity()]
        self.kind = kind
        self._elements = None
        self._index = None
        if elements is not None:
            self._set_elements(np.asarray(elements, dtype=_dtype(n)))

    def __repr__(self):
        gens = ", ".join(format_cycles(g) for g in self.gens)
        return f"PermGroup(n={self.n}, gens=[{gens}])"

    @classmethod
    def symmetric(cls, n):
        gens = []
        if n >= 2:
            gens.append(Perm.from_cycles(n, [[1, 2]]))
        if n >= 3:
            gens.append(Perm.from_cycles(n, [list(range(1, n + 1))]))
        return cls(n, gens, kind=SYM)

    @classmethod
    def alternating(cls, n):
        gens = [Perm.from_cycles(n, [[1, 2, k]]) for k in range(3, n + 1)]
        return cls(n, gens, kind=ALT)

    @classmethod
    def from_elements(cls, n, elements):
        """Group from a complete element array; generators chosen greedily."""
        elements = np.asarray(elements, dtype=_dtype(n))
        g = cls(n, [], elements=elements)
        g.gens = _greedy_generators(n, elements)
        return g

    def _set_elements(self, arr):
        self._elements = np.ascontiguousarray(arr)
        self._index = {row.tobytes(): i for i, row in enumerate(self._elements)}

    # enumeration ---------------------------------------------------------
    def known_order(self):
        if self._elements is not None:
            return len(self._elements)
        if self.kind == SYM:
            return math.factorial(self.n)
        if self.kind == ALT:
            return max(1, math.factorial(self.n) // 2)
        return None

    def elements(self, cap=ORDER_CAP):
        """All elements as an (order, n) array, identity first, BFS order."""
        if self._elements is None:
            known = self.known_order()
            if known is not None and known > cap:
                raise EnumerationCapExceeded(f"group order {known} exceeds cap {cap}")
            self._set_elements(_closure(self.n, [g.array for g in self.gens], cap))
        return self._elements

    def order(self):
        known = self.known_order()
        return known if known is not None else len(self.elements())

    def contains(self, perm) -> bool:
        arr = perm.array if isinstance(perm, Perm) else np.asarray(perm, dtype=_dtype(self.n))
        if self.kind == SYM:
            return True
        if self.kind == ALT:
            return Perm(arr).sign() == 1
        self.elements()
        return arr.astype(_dtype(self.n)).tobytes() in self._index

    def index_of(self, arr):
        self.elements()
        return self._index.get(np.asarray(arr, dtype=_dtype(self.n)).tobytes())

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.gens)

    def element_perms(self):
        return [Perm(row) for row in self.elements()]

    def is_p_group(self, p):
        order = self.order()
        while order % p == 0:
            order //= p
        return order == 1

    def is_abelian(self):
        return all((a * b) == (b * a) for a, b in combinations(self.gens, 2))

    def is_elementary_abelian(self, p):
        return self.is_abelian() and all((g ** p).is_identity() for g in self.gens)

    def is_even(self):
        return all(g.sign() == 1 for g in self.gens)

    # orbits ----------------------------------------------------------------
    def orbit_sets(self):
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.gens:
            for i, x in enumerate(g.img):
                a, b = find(i), find(x)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups = {}
        for i in range(self.n):
            groups.setdefault(find(i), []).append(i)
        return [tuple(v) for _, v in sorted(groups.items())]

    def orbits(self) -> OrbitProfile:
        orbs = self.orbit_sets()
        nontrivial = [o for o in orbs if len(o) > 1]
        regular = []
        if nontrivial:
            elems = self.elements()
            for o in nontrivial:
                x = o[0]
                stab = elems[elems[:, x] == x]
                pts = np.array(o)
                regular.append(bool(np.all(stab[:, pts] == pts[None, :])))
        order = sorted(range(len(nontrivial)), key=lambda k: len(nontrivial[k]))
        return OrbitProfile(
            sizes=tuple(len(nontrivial[k]) for k in order),
            regular=tuple(regular[k] for k in order),
            fixed_points=self.n - sum(len(o) for o in nontrivial),
            orbits=tuple(tuple(a + 1 for a in o) for o in orbs),
        )

    # misc ------------------------------------------------------------------
    def conjugate(self, g: Perm) -> "PermGroup":
        return PermGroup(self.n, [h.conjugate(g) for h in self.gens])

    def normalizes(self, g: Perm) -> bool:
        return all(self.contains(h.conjugate(g)) for h in self.gens)

    def even_part(self) -> "PermGroup":
        elems = self.elements()
        return PermGroup.from_elements(self.n, elems[_row_parity(elems) == 0])

    def setwise_stabilizer(self, points) -> "PermGroup":
        """Subgroup stabilizing a set of 1-based points."""
        elems = self.elements()
        pts = np.array(sorted(points), dtype=np.intp) - 1
        img = np.sort(elems[:, pts].astype(np.intp), axis=1)
        keep = np.all(img == pts[None, :], axis=1)
        return PermGroup.from_elements(self.n, elems[keep])

    def __eq__(self, other):
        if not isinstance(other, PermGroup) or other.n != self.n:
            return NotImplemented
        return self.order() == other.order() and self.is_subgroup_of(other)

    __hash__ = None


def _closure(n, gens, cap=ORDER_CAP):
    dt = _dtype(n)
    ident = np.arange(n, dtype=dt)
    seen = {ident.tobytes()}
    rows = [ident]
    frontier = ident[None, :]
    gens = [np.asarray(g, dtype=dt) for g in gens]
    while frontier.shape[0]:
        fresh = []
        for g in gens:
            cand = g[frontier.astype(np.intp)]
            for row in cand:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(row)
        if len(seen) > cap:
            raise EnumerationCapExceeded(f"group order exceeds cap {cap}")
        frontier = np.array(fresh, dtype=dt).reshape(-1, n)
        rows.extend(fresh)
    return np.array(rows, dtype=dt).reshape(-1, n)


def _greedy_generators(n, elements):
    gens = []
    have = {np.arange(n, dtype=_dtype(n)).tobytes()}
    for row in elements:
        if row.tobytes() in have:
            continue
        gens.append(Perm(row))
        have = {r.tobytes() for r in _closure(n, [g.array for g in gens])}
        if len(have) == len(elements):
            break
    return gens


def nu_p_factorial(n, p):
    total, q = 0, p
    while q <= n:
        total += n // q
        q *= p
    return total


# ---------------------------------------------------------------------------
# constructions


def _translation_gens(p, i, offset, n):
    """Generators of F_p^i acting on ``offset+1..offset+p^i`` by translating base-p digits."""
    size = p**i
    gens = []
    for k in range(i):
        img = list(range(n))
        for x in range(size):
            digit = (x // p**k) % p
            y = x + (((digit + 1) % p) - digit) * p**k
            img[offset + x] = offset + y
        gens.append(Perm(img))
    return gens


def trim(comp):
    comp = list(comp)
    while comp and comp[-1] == 0:
        comp.pop()
    return tuple(comp)


def _check_comp(p, comp, n):
    if any(m < 0 for m in comp):
        raise ValueError(f"negative entry in composition {comp}")
    total = sum(m * p ** (i + 1) for i, m in enumerate(comp))
    if total > n:
        raise ValueError(f"composition {comp} needs {total} points but n = {n}")
    return total


def block_layout(p, comp):
    """``(i, offset)`` per block B^i_j, blocks of size p first, 0-based offsets."""
    out = []
    z = 0
    for i, m in enumerate(comp, start=1):
        for _ in range(m):
            out.append((i, z))
            z += p**i
    return out


def construct_E(p: int, comp, n: int) -> PermGroup:
    """Product of regular elementary abelian groups on consecutive blocks of sizes p^i."""
    comp = tuple(comp)
    _check_comp(p, comp, n)
    gens = []
    for i, off in block_layout(p, comp):
        gens.extend(_translation_gens(p, i, off, n))
    g = PermGroup(n, gens)
    g.comp = trim(comp)
    return g


def construct_F(p: int, comp, n: int) -> PermGroup:
    """Even-permutation part of construct_E (p = 2, first entry not 2)."""
    comp = tuple(comp)
    if p != 2:
        raise ValueError("F(...) is defined for p = 2 only")
    if comp and comp[0] == 2:
        raise ValueError("m1 = 2 is excluded: E(2, m2, ...) meets A_n inside F(0, m2 + 1, ...)")
    e = construct_E(p, comp, n)
    odd = [g for g in e.gens if g.sign() == -1]
    even = [g for g in e.gens if g.sign() == 1]
    gens = even + [a * b for a, b in zip(odd, odd[1:])]
    f = PermGroup(n, gens)
    f.comp = e.comp
    return f


def sylow_sym(n: int, p: int) -> PermGroup:
    """Sylow p-subgroup of S_n as a product of iterated wreath products on consecutive blocks."""
    digits = []
    m = n
    while m:
        digits.append(m % p)
        m //= p
    gens = []
    offset = 0
    for i in range(len(digits) - 1, 0, -1):
        for _ in range(digits[i]):
            for j in range(1, i + 1):
                step, size = p ** (j - 1), p**j
                img = list(range(n))
                for x in range(size):
                    img[offset + x] = offset + (x + step) % size
                gens.append(Perm(img))
            offset += p**i
    g = PermGroup(n, gens)
    g._sylow_order = p ** nu_p_factorial(n, p)
    return g


def sylow(n: int, p: int, flavor: str = SYM) -> PermGroup:
    P = sylow_sym(n, p)
    if flavor == ALT and p == 2:
        return P.even_part()
    return P


# ---------------------------------------------------------------------------
# elementary abelian subgroups


def _order_p_elements_sym(n, p, even_only=False):
    """All elements of S_n whose cycle type is a nonempty product of p-cycles."""
    out = []
    img = list(range(n))

    def rec(start, used, k):
        while start < n and used[start]:
            start += 1
        if start == n:
            if k and (not even_only or (k * (p - 1)) % 2 == 0):
                out.append(list(img))
            return
        used[start] = True
        rec(start + 1, used, k)
        free = [x for x in range(start + 1, n) if not used[x]]
        if len(free) >= p - 1:
            for chosen in combinations(free, p - 1):
                for x in chosen:
                    used[x] = True
                for order in permutations(chosen):
                    cyc = (start,) + order
                    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                        img[a] = b
                    rec(start + 1, used, k + 1)
                    for a in cyc:
                        img[a] = a
                for x in chosen:
                    used[x] = False
        used[start] = False

    rec(0, [False] * n, 0)
    return np.array(out, dtype=_dtype(n)).reshape(-1, n)


def _power_rows(a, k):
    result = np.tile(np.arange(a.shape[1], dtype=a.dtype), (a.shape[0], 1))
    for _ in range(k):
        result = np.take_along_axis(a, result.astype(np.intp), axis=1)
    return result


def order_p_elements(H: PermGroup, p: int):
    if H.kind in (SYM, ALT) and H._elements is None:
        return _order_p_elements_sym(H.n, p, even_only=H.kind == ALT)
    elems = H.elements()
    ident = np.arange(H.n, dtype=elems.dtype)
    pw = _power_rows(elems, p)
    mask = np.all(pw == ident, axis=1) & ~np.all(elems == ident, axis=1)
    return elems[mask]


def _class_reps(H, p, Y, index):
    """Indices into Y of one element per conjugacy class (S_n-classes for S_n and A_n)."""
    if H.kind in (SYM, ALT) and H._elements is None:
        reps = {}
        for i, row in enumerate(Y):
            ct = Perm(row).cycle_type()
            reps.setdefault(ct, i)
        return sorted(reps.values())
    label = np.full(len(Y), -1)
    gens = [g.array.astype(np.intp) for g in H.gens]
    ginvs = [g.inverse().array.astype(np.intp) for g in H.gens]
    reps = []
    for s in range(len(Y)):
        if label[s] >= 0:
            continue
        reps.append(s)
        label[s] = s
        stack = [s]
        while stack:
            x = Y[stack.pop()]
            for g, gi in zip(gens, ginvs):
                c = g[x.astype(np.intp)][gi].astype(Y.dtype)
                j = index[c.tobytes()]
                if label[j] < 0:
                    label[j] = s
                    stack.append(j)
    return reps


@dataclass
class ElemAbelianSubgroup:
    n: int
    elements: np.ndarray
    gens: list
    maximal: bool

    @property
    def order(self):
        return len(self.elements)

    def group(self) -> PermGroup:
        g = PermGroup(self.n, self.gens, elements=self.elements)
        return g

    def signature(self):
        """S_n-conjugacy invariant: orbit sizes, order and element cycle types."""
        g = self.group()
        sizes = tuple(sorted(len(o) for o in g.orbit_sets() if len(o) > 1))
        types = Counter(Perm(r).cycle_type() for r in self.elements)
        return (sizes, self.order, tuple(sorted(types.items())))


def enumerate_elem_abelian(H: PermGroup, p: int, cap: int = SUBGROUP_CAP):
    """Elementary abelian p-subgroups of H reachable from class representatives.

    Starting from ``<x>`` for one order-p element ``x`` per conjugacy class, each
    subgroup is extended by commuting order-p elements not already inside it;
    duplicates are removed by element set.  Every maximal elementary abelian
    subgroup of H is conjugate to one in the returned list, and the ``maximal``
    flag is exact (no commuting order-p element lies outside).
    """
    n = H.n
    Y = order_p_elements(H, p)
    if len(Y) == 0:
        return []
    Yi = Y.astype(np.intp)
    index = {row.tobytes(): i for i, row in enumerate(Y)}
    ident = np.arange(n, dtype=Y.dtype)
    commute = {}

    def row(i):
        r = commute.get(i)
        if r is None:
            y = Yi[i]
            left = Y[:, y]            # z o y
            right = Y[i][Yi]          # y o z
            r = np.all(left == right, axis=1)
            commute[i] = r
        return r

    def members(elem_rows):
        return frozenset(index[r.tobytes()] for r in elem_rows if r.tobytes() in index)

    seen = {}
    level = []
    for s in _class_reps(H, p, Y, index):
        acc = [ident]
        cur = Y[s]
        for _ in range(p - 1):
            acc.append(cur)
            cur = Y[s][cur.astype(np.intp)]
        elems = np.array(acc, dtype=Y.dtype)
        key = members(elems[1:])
        if key not in seen:
            seen[key] = [elems, [s], row(s).copy()]
            level.append(key)

    results = []
    while level:
        nxt = []
        for key in level:
            elems, gens, mask = seen[key]
            cand = mask.copy()
            cand[list(key)] = False
            maximal = not cand.any()
            results.append(ElemAbelianSubgroup(n, elems, [Perm(Y[g]) for g in gens], maximal))
            covered = np.zeros(len(Y), dtype=bool)
            for y in np.flatnonzero(cand):
                if covered[y]:
                    continue
                new = [elems]
                cur = elems
                for _ in range(p - 1):
                    cur = Y[y][cur.astype(np.intp)]
                    new.append(cur)
                big = np.vstack(new)
                bkey = members(big[1:])
                covered[list(bkey)] = True
                if bkey in seen:
                    continue
                seen[bkey] = [big, gens + [int(y)], mask & row(int(y))]
                nxt.append(bkey)
                if len(seen) > cap:
                    raise EnumerationCapExceeded(f"more than {cap} elementary abelian subgroups")
            del seen[key][2]
        level = nxt
    return results


def brute_force_class_count(p: int, n: int, flavor: str = SYM, cap: int = SUBGROUP_CAP) -> int:
    """Number of S_n-classes of maximal elementary abelian p-subgroups, by search.

    Classes are told apart by :meth:`ElemAbelianSubgroup.signature`.
    """
    G = PermGroup.alternating(n) if flavor == ALT else PermGroup.symmetric(n)
    subs = enumerate_elem_abelian(G, p, cap)
    return len({s.signature() for s in subs if s.maximal})


# ---------------------------------------------------------------------------
# classification


def compositions(p: int, total: int, no_two_first: bool = False):
    """All trimmed ``(m_1, ..., m_r)`` with ``sum m_i p^i == total``."""
    if total % p:
        return []
    m = total // p
    parts = []
    q = 1
    while q <= m:
        parts.append(q)
        q *= p
    out = []

    def rec(k, remaining, acc):
        if k < 0:
            if remaining == 0:
                out.append(trim(acc[::-1]))
            return
        for c in range(remaining // parts[k], -1, -1):
            rec(k - 1, remaining - c * parts[k], acc + [c])

    rec(len(parts) - 1, m, [])
    if no_two_first:
        out = [c for c in out if not (c and c[0] == 2)]
    out = [c for c in out if c]
    return sorted(set(out), key=lambda c: tuple(c) + (0,) * (len(parts) - len(c)), reverse=True)


@dataclass(frozen=True)
class ElemAbelianClass:
    p: int
    composition: tuple
    n: int
    flavor: str = SYM

    def __post_init__(self):
        comp = trim(self.composition)
        object.__setattr__(self, "composition", comp)
        if not comp:
            raise ValueError("composition must have a nonzero entry")
        _check_comp(self.p, comp, self.n)
        if self.flavor not in (SYM, ALT):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.flavor == ALT:
            if self.p != 2:
                raise ReducedToSymmetric("for odd p every p-subgroup is even; use the symmetric classes")
            if comp[0] == 2:
                raise ValueError("m1 = 2 is excluded for the alternating group")

    @property
    def label(self):
        letter = "F" if self.flavor == ALT else "E"
        return f"{letter}({','.join(map(str, self.composition))})"

    def group(self) -> PermGroup:
        if self.flavor == ALT:
            return construct_F(self.p, self.composition, self.n)
        return construct_E(self.p, self.composition, self.n)

    def order(self):
        o = self.p ** sum((i + 1) * m for i, m in enumerate(self.composition))
        if self.flavor == ALT and self.composition[0] >= 1:
            o //= 2
        return o

    def to_json(self):
        return {"p": self.p, "n": self.n, "group": self.flavor,
                "composition": list(self.composition), "label": self.label}


def classify_elem_abelian(p: int, n: int, flavor: str = SYM):
    """Classes of maximal elementary abelian p-subgroups (up to S_n-conjugacy)."""
    if flavor == ALT:
        if p != 2:
            raise ReducedToSymmetric(
                f"p = {p} is odd: p-subgroups of A_{n} are those of S_{n}; use the symmetric classification")
        if n % 2:
            raise ValueError("the alternating classification needs even n")
        comps = compositions(2, n, no_two_first=True)
    elif flavor == SYM:
        comps = compositions(p, p * (n // p))
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    return [ElemAbelianClass(p, c, n, flavor) for c in comps]


def _elementary_order(G: PermGroup, p: int):
    if not G.is_elementary_abelian(p):
        raise ValueError("group is not elementary abelian of exponent p")
    return G.order()


def _profile_matches(p, comp, orbit_sizes, order, n_fixed_expected=None):
    counts = Counter(orbit_sizes)
    want = {p ** (i + 1): m for i, m in enumerate(comp) if m}
    if dict(counts) != want:
        return False
    return order == math.prod(orbit_sizes)


def is_conjugate_to_class(E: PermGroup, c: ElemAbelianClass) -> bool:
    """Whether E is S_n-conjugate to the representative group of class c."""
    if E.n != c.n:
        raise ValueError("degree mismatch")
    order = _elementary_order(E, c.p)
    orbs = [o for o in E.orbit_sets() if len(o) > 1]
    sizes = [len(o) for o in orbs]
    comp = c.composition
    if c.flavor == SYM or comp[0] == 0:
        return _profile_matches(c.p, comp, sizes, order)
    if not E.is_even():
        return False
    if comp[0] == 1:
        return _profile_matches(c.p, (0,) + comp[1:], sizes, order)
    # m1 >= 3: even part of the transpositions on size-2 orbits times a full product on the rest
    two = sorted(a for o in orbs if len(o) == 2 for a in o)
    if len(two) != 2 * comp[0]:
        return False
    rest_sizes = [s for s in sizes if s != 2]
    if not _profile_matches(c.p, (0,) + comp[1:], rest_sizes, math.prod(rest_sizes)):
        return False
    elems = E.elements()
    two_arr = np.array(two, dtype=np.intp)
    other = np.array([a for a in range(E.n) if a not in set(two)], dtype=np.intp)
    n_two = len({r.tobytes() for r in elems[:, two_arr]})
    n_rest = len({r.tobytes() for r in elems[:, other]})
    return (n_two == 2 ** (comp[0] - 1) and n_rest == math.prod(rest_sizes)
            and order == n_two * n_rest)


# ---------------------------------------------------------------------------
# maximal subgroups of p-groups


def _p_of(order):
    for p in range(2, order + 1):
        if order % p == 0:
            q = order
            while q % p == 0:
                q //= p
            return p if q == 1 else None
    return None


def frattini(Q: PermGroup, p: int | None = None) -> PermGroup:
    """Normal closure of the p-th powers and generator commutators."""
    elems = Q.elements()
    if p is None:
        p = _p_of(len(elems))
        if p is None:
            return PermGroup(Q.n, [])
    n = Q.n
    powers = _power_rows(elems, p)
    gens = [Perm(r) for r in np.unique(powers, axis=0)]
    for a, b in combinations(Q.gens, 2):
        gens.append(a * b * a.inverse() * b.inverse())
    gens = [g for g in gens if not g.is_identity()]
    sub = _closure(n, [g.array for g in gens])
    while True:
        keys = {r.tobytes() for r in sub}
        extra = []
        for g in Q.gens:
            ga = g.array.astype(np.intp)
            gi = g.inverse().array.astype(np.intp)
            conj = ga[sub.astype(np.intp)][:, gi].astype(sub.dtype)
            for r in conj:
                if r.tobytes() not in keys:
                    extra.append(r)
                    keys.add(r.tobytes())
        if not extra:
            break
        gens = [Perm(r) for r in sub[1:]] + [Perm(r) for r in extra]
        sub = _closure(n, [g.array for g in gens])
    return PermGroup.from_elements(n, sub)


def frattini_quotient_coords(Q: PermGroup, p: int):
    """Return (basis generators, coordinate array) for Q -> Q/Phi(Q) = F_p^d."""
    elems = Q.elements()
    phi = frattini(Q, p)
    phi_rows = phi.elements()
    basis = []
    span = {r.tobytes() for r in phi_rows}
    for g in Q.gens:
        if g.array.tobytes() in span:
            continue
        basis.append(g)
        span = {r.tobytes() for r in _closure(Q.n, [x.array for x in list(phi.gens) + basis])}
    d = len(basis)
    coords = np.zeros((len(elems), d), dtype=np.int64)
    for vec in product(range(p), repeat=d):
        w = Perm.identity(Q.n)
        for g, a in zip(basis, vec):
            w = w * g ** a
        coset = _compose_left_all(phi_rows, w.array)
        for r in coset:
            coords[Q.index_of(r)] = vec
    return basis, coords


def _compose_left_all(rows, w):
    """``x o w`` for every row x."""
    return rows[:, w.astype(np.intp)]


def maximal_subgroups_p_group(Q: PermGroup):
    """All index-p subgroups of a p-group, as preimages of hyperplanes of Q/Phi(Q)."""
    order = Q.order()
    p = _p_of(order)
    if p is None:
        raise ValueError(f"group of order {order} is not a p-group")
    elems = Q.elements()
    basis, coords = frattini_quotient_coords(Q, p)
    d = len(basis)
    out = []
    for f in product(range(p), repeat=d):
        nz = [x for x in f if x]
        if not nz or nz[0] != 1:
            continue
        keep = (coords @ np.array(f)) % p == 0
        out.append(PermGroup.from_elements(Q.n, elems[keep]))
    return out


# ---------------------------------------------------------------------------
# Sylow characterization


@dataclass
class SylowReport:
    p: int
    n: int
    flavor: str
    sylow_order: int
    classes: list
    forward: dict
    maximal_subgroups: list
    passed: bool

    def to_json(self):
        return {
            "p": self.p, "n": self.n, "group": self.flavor,
            "sylow_order": self.sylow_order,
            "classes": [c.label for c in self.classes],
            "forward": self.forward,
            "maximal_subgroups": self.maximal_subgroups,
            "forward_pass": all(self.forward.values()),
            "converse_pass": all(m["missing"] is not None for m in self.maximal_subgroups),
            "passed": self.passed,
        }


def classes_present(G: PermGroup, classes, p):
    """Labels of classes having a conjugate inside G."""
    subs = enumerate_elem_abelian(G, p)
    found = set()
    for s in subs:
        grp = s.group()
        for c in classes:
            if c.label not in found and s.order == c.order() and is_conjugate_to_class(grp, c):
                found.add(c.label)
    return found


def verify_sylow_characterization(p: int, n: int, flavor: str = SYM, workers: int = 1) -> SylowReport:
    """Sylow subgroup contains every maximal class; each of its maximal subgroups misses one."""
    classes = classify_elem_abelian(p, n, flavor)
    P = sylow(n, p, flavor)
    present = classes_present(P, classes, p)
    forward = {c.label: c.label in present for c in classes}

    def check(M):
        have = classes_present(M, classes, p)
        missing = next((c.label for c in classes if c.label not in have), None)
        return {"order": M.order(), "missing": missing}

    maxes = maximal_subgroups_p_group(P) if P.order() > 1 else []
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(check, maxes))
    else:
        rows = [check(M) for M in maxes]
    passed = all(forward.values()) and all(r["missing"] is not None for r in rows)
    return SylowReport(p, n, flavor, P.order(), classes, forward, rows, passed)


# ---------------------------------------------------------------------------
# row and column shifts on a p x p grid of points


def grid_alpha(p: int, n: int) -> Perm:
    """Product of the p-cycles (1..p)(p+1..2p)...(p^2-p+1..p^2)."""
    return Perm.from_cycles(n, [list(range(b * p + 1, b * p + p + 1)) for b in range(p)])


def grid_beta(p: int, n: int) -> Perm:
    """Product of the p-cycles (a, p+a, ..., p^2-p+a) for a = 1..p."""
    return Perm.from_cycles(n, [[b * p + a for b in range(p)] for a in range(1, p + 1)])


def sylow_on_range(p: int, start: int, n: int) -> list:
    """Generators of a Sylow p-subgroup of the symmetric group on start+1..n."""
    local = sylow_sym(n - start, p)
    gens = []
    for g in local.gens:
        gens.append(Perm(list(range(start)) + [start + x for x in g.img]))
    return gens


def grid_group(p: int, k: int):
    """``(Q, alpha, beta, T-generators)`` with Q = <alpha, beta, T> inside S_kp."""
    if k < p:
        raise ValueError(f"need k >= p, got k = {k}, p = {p}")
    n = k * p
    a, b = grid_alpha(p, n), grid_beta(p, n)
    t = sylow_on_range(p, p * p, n) if n > p * p else []
    return PermGroup(n, [a, b] + t), a, b, t


def symmetric_normalizer(Q: PermGroup, max_degree: int = 10) -> np.ndarray:
    """All g in S_n with g Q g^-1 = Q, by scanning S_n (rows, lexicographic order)."""
    n = Q.n
    if n > max_degree:
        raise EnumerationCapExceeded(f"scanning S_{n} exceeds degree {max_degree}")
    from itertools import permutations
    allp = np.array(list(permutations(range(n))), dtype=np.intp).reshape(-1, n)
    inv = np.argsort(allp, axis=1)
    base = np.int64(n)
    weights = base ** np.arange(n, dtype=np.int64)
    keys = Q.elements().astype(np.int64) @ weights
    keep = np.ones(len(allp), dtype=bool)
    for h in Q.gens:
        hh = np.asarray(h.img, dtype=np.intp)
        # (g h g^-1)(x) = g[h[g^-1[x]]]
        conj = np.take_along_axis(allp, hh[inv], axis=1)
        keep &= np.isin(conj.astype(np.int64) @ weights, keys)
    return allp[keep]
