from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cgwrep.field import L, ONE, R, LValue, as_rf, delta
from cgwrep.rep import (
    Rep, RepMatrix, RootLabel, adjacent, basis, nu_e, nu_g, nu_g_inv, rank_one_factors,
    representation, verify_relations,
)
from cgwrep.linalg import rank_over_field
from cgwrep.subspaces import vector_u, w, wh


@pytest.mark.parametrize("n,size", [(4, 12), (5, 20), (6, 30), (7, 42)])
def test_basis_size_and_order(n, size):
    B = basis(n)
    assert len(B) == size == len(set(B.labels))
    assert all(B(lab.i, lab.j, lab.hatted) == k for k, lab in enumerate(B.labels))
    assert {lab.j for lab in B.labels[-2 * (n - 1):]} == {n}
    assert all(1 <= lab.i < lab.j <= n for lab in B.labels)


def test_basis_rejects_small_n():
    with pytest.raises(ValueError):
        basis(3)


def test_root_label_keys():
    lab = RootLabel(2, 5, True)
    assert lab.key() == "wh_2_5"
    assert RootLabel.from_key("wh_2_5") == lab
    assert RootLabel.from_key("w_1_3") == RootLabel(1, 3, False)


def test_adjacency():
    assert adjacent(1, 3) and adjacent(3, 1) and adjacent(2, 3) and adjacent(4, 5)
    assert not adjacent(1, 2) and not adjacent(2, 4) and not adjacent(1, 4)


def test_generator_examples():
    B = basis(5)
    assert nu_g(5, 1).column(B(1, 2, True)) == {B(1, 2, True): 1 / L}
    assert nu_g(5, 3).column(B(2, 3)) == {B(2, 3): 1 / L}
    assert nu_g(5, 4).column(B(1, 2, True)) == {B(1, 2, True): R}


def test_index_out_of_range():
    with pytest.raises(IndexError):
        nu_g(5, 6)
    with pytest.raises(IndexError):
        nu_e(5, 0)


def test_inverse_examples():
    B = basis(4)
    for i in range(1, 5):
        assert nu_g(4, i) @ nu_g_inv(4, i) == RepMatrix.identity(12)
    assert nu_g_inv(4, 1).column(B(1, 2, True)) == {B(1, 2, True): L}
    rep = representation(4, Fraction(3), Fraction(2))
    for i in range(1, 5):
        assert rep.g[i] @ rep.ginv(i) == rep.I


@pytest.mark.parametrize("n", [4, 5])
def test_e_rank_one_with_expected_image(n):
    B = basis(n)
    for i in range(1, n + 1):
        E = nu_e(n, i)
        col, row = rank_one_factors(E)
        outer = RepMatrix(E.dim, {(a, b): x * y for a, x in col.items() for b, y in row.items()})
        assert outer == E
        assert rank_over_field([list(r) for r in E.to_dense(0)]) == 1
        target = B(1, 2, True) if i == 1 else B(i - 1, i)
        assert set(col) == {target}


def test_e_squared_is_delta_e():
    for i in range(1, 5):
        E = nu_e(4, i)
        assert E @ E == E.scale(delta())


@pytest.mark.parametrize("n", [5, 6])
def test_sparsity_pattern(n):
    rep = representation(n)
    labels = basis(n).labels
    for k in range(1, n + 1):
        D = rep.g[k] - rep.I.scale(R)
        near = {1, 2} if k == 1 else {k - 1, k, k + 1}
        for a, b, _ in D.entries():
            for lab in (labels[a], labels[b]):
                # g_1 also mixes hatted labels far from the node
                assert {lab.i, lab.j} & near or (k == 1 and lab.hatted)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_relations_symbolic(n):
    rpt = verify_relations(n)
    assert rpt.ok, [c.to_json() for c in rpt.failures()]
    names = {c.name for c in rpt.checks}
    assert {"braid", "commute", "g_inverse", "ee=delta*e", "ege=l*e", "eee=e",
            "gge=ee", "quadratic"} <= names


def test_relations_mutation_detected():
    rep = representation(5)
    B = basis(5)
    g4 = RepMatrix(rep.dim, {(i, j): v for i, j, v in rep.g[4].entries()})
    g4.rows.setdefault(B(3, 4), {})[B(3, 5)] = R ** 2
    bad = Rep(5, g={4: g4})
    failed = {(c.name, c.indices) for c in verify_relations(5, rep=bad).failures()}
    assert ("braid", (3, 4)) in failed


@settings(max_examples=5)
@given(st.fractions(min_value=-30, max_value=30, max_denominator=30).filter(bool),
       st.fractions(min_value=2, max_value=30, max_denominator=30))
def test_relations_at_numeric_points(l0, r0):
    assert verify_relations(4, l0, r0).ok


def test_hecke_quotient_on_e_killed_vector():
    # u at its critical l is killed by every e_i, so g_i^2 + m g_i - 1 vanishes on it
    n, lv = 5, LValue(1, -13)
    rep = representation(n, lv)
    u = {k: as_rf(v) for k, v in vector_u(n).to_index(n).items()}
    for i in range(1, n + 1):
        assert not rep.e(i).apply(u)
        H = (rep.g[i] @ rep.g[i]) + rep.g[i].scale(rep.m) - rep.I
        assert not H.apply(u)


def test_to_json_shape():
    js = nu_g(4, 2).to_json(4)
    assert js["n"] == 4 and len(js["labels"]) == 12
    assert all(isinstance(e[2], str) for e in js["entries"])
