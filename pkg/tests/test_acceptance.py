"""Acceptance criteria: one PASS/FAIL line each.

Runs under pytest (lines are printed outside capture) or directly with
`python tests/test_acceptance.py`."""

import random
import time

import pytest

from cgwrep.field import LValue, random_points
from cgwrep.kernel import det_sum, kernel_at, det_s7_closed_form, action_table_sweep
from cgwrep.rep import verify_relations
from cgwrep.specht import (
    dim_sum_check, degree_list, partitions, syt_count, syt_enumerate,
)
from cgwrep import subspaces as SS

K7_TABLE = [("r^-21", 1), ("r^-7", 6), ("-r^-9", 7), ("r^3", 14), ("r^-1", 21), ("-r^3", 35)]
DEG8 = [1, 7, 8, 14, 20, 21, 28, 35, 42, 48]
DEG9 = [1, 8, 9, 27, 28, 36, 42, 48, 56, 63, 70]
GENERIC_PER_FAMILY = 5


def _generic(n, count, tag):
    rng = random.Random(f"acceptance:{tag}:{n}")
    return [SS.random_generic_l(rng, n) for _ in range(count)]


def relations():
    bad = [n for n in (4, 5, 6) if not verify_relations(n).ok]
    pts = random_points(20, seed=7, n=7)
    bad_pts = [p for p in pts if not verify_relations(7, *p).ok]
    return not bad and not bad_pts, f"symbolic n=4..6 failures {bad}; n=7 {len(pts)} points, {len(bad_pts)} failed"


def det_s7():
    ok = det_sum(7, "probabilistic", points=12, seed=1, target=det_s7_closed_form())
    return ok, "12 random admissible points, exact comparison"


def k7_table():
    got = [(l, kernel_at(7, LValue.parse(l)).k) for l, _ in K7_TABLE]
    return got == K7_TABLE, " ".join(f"{l}:{k}" for l, k in got)


def symbolic_det():
    parts = []
    ok = True
    for n in (4, 5):
        ff = det_sum(n, "symbolic")
        crit = set(SS.critical_sets(n).l_values)
        good = ff.complete and ff.l_roots() == crit
        ok = ok and good
        parts.append(f"n={n} complete={ff.complete} roots_match={ff.l_roots() == crit}")
    return ok, "; ".join(parts)


def _family_cases():
    """(family, n, l_critical, holds(l)) for every family in scope."""
    cases = []
    for n in (4, 5, 6):
        cs = SS.critical_sets(n).l_values
        cases.append(("u", n, cs[0], lambda l, n=n: SS.u_is_eigenvector(n, l)))
        ts = SS.vectors_t(n)
        cases.append(("t", n, LValue(1, -1), lambda l, n=n, ts=ts: SS.span_is_invariant(n, l, ts)))
        for name, (x, lv) in SS.kernel_vectors(n).items():
            cases.append((name, n, lv, lambda l, n=n, x=x: SS.in_k(n, x, l)))
    for n in (5, 6):
        lv = SS.critical_sets(n).l_values[1]
        cases.append(("v", n, lv, lambda l, n=n: SS.delta_holds(n, l)))
    return cases


def invariant_suite():
    bad = []
    for name, n, lc, holds in _family_cases():
        if not holds(lc):
            bad.append(f"{name}@n={n} critical")
        for g in _generic(n, GENERIC_PER_FAMILY, name):
            if holds(g):
                bad.append(f"{name}@n={n} generic {g}")
    return not bad, f"{len(_family_cases())} family/n cases; failures {bad}"


def e_annihilation():
    spans = []
    for n in (4, 5, 6):
        cs = SS.critical_sets(n).l_values
        spans.append(("u", n, [SS.vector_u(n)], cs[0]))
        spans.append(("t", n, SS.vectors_t(n), LValue(1, -1)))
        if n >= 5:
            spans.append(("v", n, SS.vectors_v(n), cs[1]))
        for name, (x, lv) in SS.kernel_vectors(n).items():
            spans.append((name, n, [x], lv))
        for lv in cs:
            kb = [SS.VectorExpr.from_index(n, v) for v in kernel_at(n, lv).basis]
            spans.append((f"K@{lv}", n, kb, lv))
    bad = [f"{name}@n={n}" for name, n, vs, lv in spans
           if not SS.e_annihilation_check(vs, n, lv)]
    return not bad, f"{len(spans)} subspaces; failures {bad}"


def action_table():
    parts, ok = [], True
    for n in (5, 6):
        sw = action_table_sweep(n)
        ok = ok and sw.ok and sw.passed == sw.checked
        parts.append(f"n={n}: {sw.passed}/{sw.checked} pass, {len(sw.exclusions)} excluded")
    return ok, "; ".join(parts)


def hj_matrices():
    h = SS.h_matrices_check()
    j = SS.j_matrices_check()
    return all(h.values()) and j, f"H relations {sum(h.values())}/{len(h)}; J {j}"


def specht_suite():
    syt = all(syt_count(p) == syt_enumerate(p) for k in range(9) for p in partitions(k))
    dims = all(dim_sum_check(n) for n in range(4, 9))
    d8, d9 = degree_list(8, 56), degree_list(9, 72)
    ok = syt and dims and d8 == DEG8 and d9 == DEG9
    return ok, f"syt {syt}; dim sums {dims}; n=8 {d8 == DEG8}; n=9 {d9 == DEG9}"


def generic_kernel():
    got = {}
    for n in (4, 5, 6, 7):
        got[n] = [kernel_at(n, g).k for g in _generic(n, 3, "kernel")]
    ok = all(k == 0 for ks in got.values() for k in ks)
    return ok, " ".join(f"n={n}:{ks}" for n, ks in got.items())


def parameter_map():
    bad = [n for n in range(4, 13) if not SS.critical_sets(n).bijective()]
    return not bad, f"n=4..12, failures {bad}"


CRITERIA = [
    (1, "relation suite", relations),
    (2, "det S(7) closed form", det_s7),
    (3, "k(7) table", k7_table),
    (4, "symbolic det n=4,5", symbolic_det),
    (5, "invariant-vector suite", invariant_suite),
    (6, "e-annihilation on invariant subspaces", e_annihilation),
    (7, "conjugate action table sweep", action_table),
    (8, "H/J matrix checks", hj_matrices),
    (9, "Specht suite", specht_suite),
    (10, "generic kernel is zero", generic_kernel),
    (11, "t/l parameter map", parameter_map),
]


def run_criterion(fn):
    t0 = time.time()
    ok, detail = fn()
    return ok, f"{detail} ({time.time() - t0:.1f}s)"


@pytest.mark.parametrize("num,label,fn", CRITERIA, ids=[f"AC{c[0]:02d}" for c in CRITERIA])
def test_acceptance(num, label, fn, capsys):
    ok, detail = run_criterion(fn)
    with capsys.disabled():
        print(f"\n[AC{num:02d}] {'PASS' if ok else 'FAIL'} {label}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    import sys
    failed = 0
    for num, label, fn in CRITERIA:
        ok, detail = run_criterion(fn)
        failed += not ok
        print(f"[AC{num:02d}] {'PASS' if ok else 'FAIL'} {label}: {detail}", flush=True)
    sys.exit(1 if failed else 0)
