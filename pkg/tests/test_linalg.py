from fractions import Fraction

from hypothesis import given, settings, strategies as st

from cgwrep.field import L, ONE, R, BiLaurentPoly, RationalFunction, as_rf, parse
from cgwrep.linalg import (
    Packing, bareiss_det, clear_row, det_exact, ff_rref, matvec_is_zero, normalize_vector,
    nullspace_over_field, rank_kernel, rank_over_field,
)
from cgwrep.rep import RepMatrix

from strategies import polys

small = st.sampled_from([ONE, R, L, R - 1, L * R - 1, 1 / R, L + R ** 3, 2 * L - R ** -2,
                         (L - 1) / (R + 1), as_rf(0), as_rf(3)])


def dense_det(M):
    """Cofactor expansion, for small matrices."""
    if len(M) == 1:
        return as_rf(M[0][0])
    out = as_rf(0)
    for j, a in enumerate(M[0]):
        if a:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            out = out + (-1) ** j * a * dense_det(minor)
    return out


def to_rep(M):
    n = len(M)
    return RepMatrix(n, {(i, j): as_rf(M[i][j]) for i in range(n) for j in range(n)})


@settings(max_examples=25)
@given(st.integers(1, 4).flatmap(lambda k: st.lists(st.lists(small, min_size=k, max_size=k),
                                                       min_size=k, max_size=k)))
def test_det_matches_cofactor(M):
    assert det_exact(to_rep(M), len(M)) == dense_det(M)


def test_identity_det():
    assert det_exact(RepMatrix.identity(12), 12) == ONE


@settings(max_examples=25)
@given(st.integers(1, 4).flatmap(lambda k: st.lists(st.lists(small, min_size=k, max_size=k),
                                                       min_size=k, max_size=k)))
def test_rank_kernel_consistent(M):
    k = len(M)
    rank, basis = rank_kernel(to_rep(M), k)
    assert rank + len(basis) == k
    assert rank == rank_over_field([list(map(as_rf, row)) for row in M])
    for v in basis:
        for row in M:
            s = sum((as_rf(row[j]) * v[j] for j in v), as_rf(0))
            assert s == 0


def test_rank_kernel_singular_example():
    M = [[ONE, R, L], [R, R * R, L * R], [as_rf(0), ONE, ONE]]
    rank, basis = rank_kernel(to_rep(M), 3)
    assert rank == 2 and len(basis) == 1
    assert len(nullspace_over_field(M, 3)) == 1


@given(st.lists(polys(nonzero=True), min_size=1, max_size=4))
def test_clear_row_is_scaling(entries):
    row = {k: as_rf(p) / (R + 2) for k, p in enumerate(entries)}
    mult, prow = clear_row(row)
    for k, v in row.items():
        assert as_rf(prow[k]) == v * mult


@given(st.lists(polys(nonzero=True), min_size=1, max_size=4), polys(nonzero=True))
def test_normalize_vector_idempotent_and_scale_free(entries, scale):
    vec = {k: p for k, p in enumerate(entries)}
    a = normalize_vector(vec)
    assert normalize_vector(a) == a
    assert normalize_vector({k: p * scale.split()[3] for k, p in vec.items()}) == a


@given(polys(), st.integers(8, 40))
def test_packing_roundtrip(p, bits):
    p = p.shift(3, 3)
    if not p:
        return
    prows = [{0: p}]
    (a0, b0), (a1, b1) = p.min_exponents(), p.max_exponents()
    pk = Packing(max(abs(int(c)) for c in p.terms.values()), b1 + 1, a1 + 1, bits=bits)
    assert pk.unpack(pk.pack(p)) == p


def test_matvec_is_zero():
    rows = [{0: BiLaurentPoly({(0, 1): 1}), 1: BiLaurentPoly({(0, 0): -1})}]
    assert matvec_is_zero(rows, {0: BiLaurentPoly.const(1), 1: BiLaurentPoly({(0, 1): 1})})
    assert not matvec_is_zero(rows, {0: BiLaurentPoly.const(1)})
