"""Acceptance criteria, each at its stated tolerance and runtime limit.

Every test records one PASS/FAIL line; conftest prints them in the summary.
"""

import subprocess
import sys
import time
from contextlib import contextmanager
from math import comb

import numpy as np

from spechtlab.brauer import MonomialModuleSpec, brauer_quotient
from spechtlab.decomp import fitting_split, verify_split
from spechtlab.exterior import delta_matrix
from spechtlab.experiments import run_trace_audit
from spechtlab.fflinalg import rank
from spechtlab.jordan import (generic_jordan_type, induced_module, is_generically_free,
                              monomial_jordan_type, monomial_stable_type, regenerate,
                              stable_chain_report)
from spechtlab.permgrp import (ALT, SYM, PermGroup, brute_force_class_count,
                               classify_elem_abelian, construct_E, grid_group, parse_cycles,
                               sylow_sym, verify_sylow_characterization)
from spechtlab.rep import ModuleRep

RESULTS = {}

CLASS_CASES = [(2, 4, SYM), (2, 6, SYM), (2, 8, SYM), (3, 6, SYM), (3, 9, SYM),
               (2, 4, ALT), (2, 6, ALT), (2, 8, ALT)]


@contextmanager
def criterion(num, title, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        if ok and elapsed >= limit:
            ok = False
            title += f" (over the {limit:.0f} s limit)"
        RESULTS[num] = f"{'PASS' if ok else 'FAIL'}  [{num}] {title}  ({elapsed:.1f} s)"
        print(RESULTS[num])
    assert elapsed < limit, f"criterion {num} took {elapsed:.1f} s, limit {limit} s"


def test_1_boundary_exactness():
    with criterion(1, "delta o delta = 0 and dim ker delta_r = C(n-1, r), n <= 9", 30):
        for p in (2, 3, 5):
            for n in range(2, 10):
                for r in range(1, n):
                    d_r, d_up = delta_matrix(n, r, p), delta_matrix(n, r + 1, p)
                    assert not (d_r @ d_up % p).any(), (n, r, p)
                    assert comb(n, r) - rank(d_r, p) == comb(n - 1, r), (n, r, p)


def test_2_classification_oracle():
    with criterion(2, "brute-force class counts equal composition counts", 300):
        for p, n, flavor in CLASS_CASES:
            assert brute_force_class_count(p, n, flavor) == len(classify_elem_abelian(p, n, flavor)), \
                (p, n, flavor)


def test_3_sylow_characterization():
    with criterion(3, "Sylow contains every class; every maximal subgroup misses one", 600):
        for p, n, flavor in CLASS_CASES:
            rep = verify_sylow_characterization(p, n, flavor)
            assert all(rep.forward.values()), (p, n, flavor)
            assert all(m["missing"] is not None for m in rep.maximal_subgroups), (p, n, flavor)
            assert rep.passed


def test_4_decomposable_restriction():
    with criterion(4, "S^(8,1,1) restricted to <(1..5),(6..10)> splits over F_5", 60):
        Q = PermGroup(10, [parse_cycles("(1,2,3,4,5)", 10), parse_cycles("(6,7,8,9,10)", 10)])
        V = ModuleRep.hook(10, 2, 5)
        res = fitting_split(V, Q.gens, trials=200, seed=0)
        assert res.decomposed and res.trials <= 200
        assert verify_split(V, Q.gens, res.parts)


def test_5_brauer_quotient_vanishes():
    with criterion(5, "S^(4,1,1)(P) = 0 for a Sylow 2-subgroup P of S_6", 60):
        rep = brauer_quotient(ModuleRep.hook(6, 2, 2), sylow_sym(6, 2))
        assert rep.dim_quotient == 0


def test_6_exterior_chain():
    with criterion(6, "stable types [2], [1], not free at p = 3 for E(2) and E(4)", 300):
        for k in (2, 4):
            rep = stable_chain_report(3, k, construct_E(3, (k,), 3 * k))
            assert [str(r.direct) for r in rep.rows[:2]] == ["[2]", "[1]"]
            assert all(r.agree for r in rep.rows)
            assert rep.top_not_free_direct and rep.top_not_free_recursive and rep.passed
        assert rep.top_fixed == 4
        top = monomial_stable_type(MonomialModuleSpec(12, 3, 3), construct_E(3, (4,), 12))
        assert str(top) == "[1]^4"


def test_7_grid_nonvanishing():
    with criterion(7, "W(Q) != 0 and trace audit for (p, k) = (3, 3), (3, 4)", 600):
        for k in (3, 4):
            Q = grid_group(3, k)[0]
            assert brauer_quotient(ModuleRep.hook(3 * k, 3, 3), Q).dim_quotient >= 1
            audit = run_trace_audit(3, k)
            assert audit.outcome == "PASS", audit.result
            assert audit.result["w"]["pairing_with_e_block"] == 1


def _unipotent_pairs(rng, p, dim):
    while True:
        c = rng.integers(0, p, size=(dim, dim))
        if rank(c, p) == dim:
            break
    u = np.eye(dim, dtype=np.int64) + np.triu(rng.integers(0, p, size=(dim, dim)), 1)
    from spechtlab.fflinalg import solve
    cinv = np.stack([solve(c, col, p) for col in np.eye(dim, dtype=np.int64)], axis=1)
    return c @ u @ cinv % p


def test_8_jordan_laws():
    with criterion(8, "additivity, induced freeness, monomial agreement, generator independence", 300):
        rng = np.random.default_rng(2024)
        E = construct_E(3, (2,), 6)
        mods = [ModuleRep.hook(6, 1, 3), ModuleRep.natural(6, 3), ModuleRep.wedge(6, 2, 3),
                ModuleRep.trivial(3)]
        for _ in range(6):
            u = _unipotent_pairs(rng, 3, 3)
            mods.append(ModuleRep.from_generators(E, [u, u @ u % 3], 3))
        for i in range(len(mods)):
            M, N = mods[i], mods[(i + 3) % len(mods)]
            assert generic_jordan_type(M.direct_sum(N), E) == generic_jordan_type(M, E) + generic_jordan_type(N, E)

        C = [parse_cycles("(1,2,3)", 6)]
        D = PermGroup(6, [parse_cycles("(4,5,6)", 6)])
        for dim in (1, 2, 3):
            for _ in range(3):
                E2, M = induced_module(C, D, [_unipotent_pairs(rng, 3, dim)], 3)
                assert is_generically_free(generic_jordan_type(M, E2))

        for p in (2, 3, 5):
            for n in range(p, 10):
                for c in classify_elem_abelian(p, n):
                    G = c.group()
                    for r in range(1, min(3, n) + 1):
                        mod = MonomialModuleSpec(n, r, p)
                        assert generic_jordan_type(mod.rep(), G) == monomial_jordan_type(mod, G), (p, n, c.label, r)

        cases = [(construct_E(3, (2,), 7), ModuleRep.hook(7, 2, 3)),
                 (construct_E(2, (1, 1), 6), ModuleRep.hook(6, 2, 2)),
                 (construct_E(3, (0, 1), 9), ModuleRep.hook(9, 3, 3))]
        bases = [generic_jordan_type(M, G) for G, M in cases]
        for t in range(20):
            (G, M), base = cases[t % len(cases)], bases[t % len(cases)]
            d = len(G.gens)
            while True:
                exps = rng.integers(0, M.p, size=(d, d))
                if rank(exps, M.p) == d:
                    break
            assert generic_jordan_type(M, regenerate(G, exps, M.p), seed=t) == base


CLI_RUNS = [
    ["elem-abelian", "--p", "2", "--n", "8", "--group", "alt", "--brute-force"],
    ["sylow-verify", "--p", "3", "--n", "9"],
    ["brauer", "--p", "3", "--k", "3", "--subgroup", "Q"],
    ["brauer", "--p", "2", "--k", "3", "--subgroup", "Sylow", "--module", "hook:2"],
    ["jordan", "--p", "3", "--n", "6", "--r", "1", "--subgroup", "E(2)", "--seed", "7"],
    ["decompose", "--p", "5", "--n", "10", "--r", "2", "--subgroup", "gens:(1,2,3,4,5);(6,7,8,9,10)",
     "--seed", "11"],
    ["vertex-evidence", "--p", "3", "--k", "4", "--seed", "3"],
    ["trace-audit", "--p", "3", "--k", "3"],
]


def test_9_cli_determinism():
    with criterion(9, "every CLI experiment reruns to byte-identical JSON", 600):
        for argv in CLI_RUNS:
            outs = [subprocess.run([sys.executable, "-m", "spechtlab.cli", *argv],
                                   capture_output=True, check=True).stdout for _ in range(2)]
            assert outs[0] and outs[0] == outs[1], argv
