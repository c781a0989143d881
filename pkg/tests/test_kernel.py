import random

import pytest

from cgwrep.field import LValue, R, as_rf, trial_factor
from cgwrep.kernel import (
    ACTION_CASES, ConjugateSpec, c_matrix, c_matrix_literal, conjugate_specs, det_at_point,
    det_sum, det_symbolic, g_path, in_kernel, kernel_at, det_s7_closed_form, action_table_sweep,
    action_entry_valid, sum_matrix, verify_kernel_invariance, verify_action_entry,
)
from cgwrep.rep import RepMatrix, basis, representation
from cgwrep.subspaces import random_generic_l, vectors_t


def test_g_path_order():
    rep = representation(5)
    assert g_path(5, 3, 3) == rep.g[3]
    assert g_path(5, 5, 3) == rep.g[5] @ rep.g[4] @ rep.g[3]
    assert g_path(5, 3, 5, starred=True) == rep.ginv(3) @ rep.ginv(4) @ rep.ginv(5)


def test_conjugate_examples():
    rep = representation(4)
    for i in range(1, 4):
        assert c_matrix(4, ConjugateSpec(i, i + 1, False)) == rep.e(i + 1)
    assert c_matrix(4, ConjugateSpec(1, 2, True)) == rep.e(1)


@pytest.mark.parametrize("n", [4, 5])
def test_rank_one_form_equals_literal_product(n):
    for spec in conjugate_specs(n):
        assert c_matrix(n, spec) == c_matrix_literal(n, spec), spec


def test_sum_matrix_size():
    for n, size in [(4, 12), (5, 20), (6, 30)]:
        assert sum_matrix(n).dim == size


def test_det_s7_closed_form_parses():
    ff = trial_factor(det_s7_closed_form(), n=7)
    assert ff.complete
    assert ff.multiplicity("l + r^3") == 35
    assert ff.multiplicity("l*r^21 - 1") == 1


def test_det_s7_at_one_point():
    assert det_sum(7, "probabilistic", points=1, seed=5)


def test_det_modes_agree():
    for n in (4, 5):
        assert det_sum(n, "probabilistic", points=3, seed=1, target=det_symbolic(n))


def test_det_refuses_large_symbolic():
    with pytest.raises(ValueError):
        det_sum(8, "symbolic")
    with pytest.raises(ValueError):
        det_sum(5, "probabilistic")


def test_det_n4_l_roots():
    roots = det_sum(4, "symbolic").l_roots()
    assert roots == {LValue(1, -9), LValue(1, -1), LValue(-1, -3), LValue(1, 3), LValue(-1, 3)}


def expected_k(n):
    """k at each critical l, in critical_sets order: the k(7) pattern 1, n-1, n,
    n(n-3)/2, n(n-1)/2, n(n-2), with the two coinciding values summed at n=4."""
    ks = [1, n - 1, n, n * (n - 3) // 2, n * (n - 1) // 2, n * (n - 2)]
    if n == 4:
        ks[1] = ks[4] = ks[1] + ks[4]
    return ks


@pytest.mark.parametrize("n", [4, 5, 6])
def test_kernel_table_small(n):
    from cgwrep.subspaces import critical_sets
    for lv, k in zip(critical_sets(n).l_values, expected_k(n)):
        rep = kernel_at(n, lv)
        assert rep.k == k, lv
        assert rep.rank + rep.k == n * (n - 1)
        for v in rep.basis:
            assert in_kernel(n, v, representation(n, lv))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_kernel_generic_zero(n):
    rng = random.Random(n)
    assert kernel_at(n, random_generic_l(rng, n)).k == 0


def test_kernel_report_json():
    js = kernel_at(5, LValue(-1, 3)).to_json()
    assert js == {"n": 5, "l": "-r^3", "rank": 5, "k": 15}


def test_kernel_accepts_string_l():
    assert kernel_at(5, "r^3").k == 5


def test_kernel_invariance():
    assert verify_kernel_invariance(5, LValue(1, 3))
    n, lv = 4, LValue(1, -1)
    ts = [{k: v for k, v in t.to_index(n).items()} for t in vectors_t(n)]
    assert verify_kernel_invariance(n, lv, vectors=ts)


def test_kernel_invariance_mutation():
    n, lv = 5, LValue(1, 3)
    kb = kernel_at(n, lv).basis
    bad = dict(kb[0])
    j = next(j for j in range(n * (n - 1)) if j not in bad)
    bad[j] = as_rf(R)
    assert not verify_kernel_invariance(n, lv, vectors=[bad])


def test_action_table_examples():
    assert verify_action_entry(6, "ELOHH", (4, 6, 2, 1))
    for i in range(1, 6):
        for j in range(i + 1, 7):
            for s in range(1, 6):
                for t in range(1, 6):
                    if action_entry_valid(6, "IHNH", i, j, s, t):
                        assert verify_action_entry(6, "IHNH", (i, j, s, t))


def test_lonhnh_matches_e_action():
    n = 5
    B = basis(n)
    rep = representation(n)
    for i in range(2, n):
        assert verify_action_entry(n, "LONHNH", (i, i + 1, 1))
        got = rep.e(i + 1).column(B(i - 1, i))
        assert set(got) == {B(i, i + 1)}


def test_action_table_out_of_range():
    with pytest.raises(ValueError):
        verify_action_entry(5, "LONHNH", (1, 2, 1))
    with pytest.raises(ValueError):
        verify_action_entry(5, "ELOHH", (3, 5, 1, 1))


def test_action_table_sweep_n5():
    sw = action_table_sweep(5)
    assert sw.ok and not sw.exclusions
    assert sw.checked == sw.passed > 0
    assert len(ACTION_CASES) == 16
