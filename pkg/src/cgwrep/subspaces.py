"""Explicit invariant vectors and subspaces of V_n at the critical values of l,
the degree-4 and degree-2 matrix models of H(D_4), and the t <-> l map."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .field import R, ONE, LValue, RationalFunction, as_rf
from .kernel import in_kernel, kernel_at
from .linalg import nullspace_over_field, rank_over_field
from .rep import Rep, RootLabel, basis, representation


class VectorExpr:
    """Sparse vector of V_n indexed by RootLabel."""

    __slots__ = ("coords",)

    def __init__(self, coords=None):
        self.coords = {}
        for lab, v in (coords or {}).items():
            if v:
                self.coords[RootLabel(*lab)] = v

    @classmethod
    def unit(cls, i, j, hatted=False, c=1):
        return cls({RootLabel(i, j, hatted): as_rf(c)})

    def __add__(self, other):
        out = dict(self.coords)
        for lab, v in other.coords.items():
            w = out.get(lab, 0) + v
            if w:
                out[lab] = w
            else:
                out.pop(lab, None)
        return VectorExpr(out)

    def __neg__(self):
        return VectorExpr({k: -v for k, v in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        if not c:
            return VectorExpr()
        return VectorExpr({k: c * v for k, v in self.coords.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, VectorExpr):
            return NotImplemented
        keys = set(self.coords) | set(other.coords)
        return all(self.coords.get(k, 0) == other.coords.get(k, 0) for k in keys)

    def is_zero(self):
        return not self.coords

    def __getitem__(self, lab):
        return self.coords.get(RootLabel(*lab), 0)

    def to_index(self, n: int) -> dict:
        B = basis(n)
        return {B.index[lab]: v for lab, v in self.coords.items()}

    @classmethod
    def from_index(cls, n: int, vec: dict) -> "VectorExpr":
        labels = basis(n).labels
        return cls({labels[k]: v for k, v in vec.items()})

    def to_json(self) -> dict:
        order = sorted(self.coords, key=lambda lab: (lab.j, lab.i, not lab.hatted))
        return {lab.key(): str(as_rf(self.coords[lab])) for lab in order}

    def __repr__(self):
        return f"VectorExpr({self.to_json()})"


def w(i, j):
    return VectorExpr.unit(i, j, False)


def wh(i, j):
    return VectorExpr.unit(i, j, True)


def act(rep: Rep, k: int, x: VectorExpr) -> VectorExpr:
    return VectorExpr.from_index(rep.n, rep.g[k].apply(x.to_index(rep.n)))


def act_e(rep: Rep, k: int, x: VectorExpr) -> VectorExpr:
    return VectorExpr.from_index(rep.n, rep.e(k).apply(x.to_index(rep.n)))


# ---------------------------------------------------------------------------
# critical values

@dataclass
class CriticalSet:
    n: int
    l_values: list
    t_values: list

    def bijective(self) -> bool:
        return Counter(t_to_l(t) for t in self.t_values) == Counter(self.l_values)


def t_to_l(t: LValue) -> LValue:
    """l = r^3 / t."""
    return LValue(1 / t.coeff, 3 - t.power)


def critical_sets(n: int) -> CriticalSet:
    if n < 4:
        raise ValueError(f"n must be >= 4, got {n}")
    ls = [LValue(1, 7 - 4 * n), LValue(1, 7 - 2 * n), LValue(-1, 5 - 2 * n),
          LValue(1, 3), LValue(1, -1), LValue(-1, 3)]
    ts = [LValue(1, 4 * n - 4), LValue(1, 2 * n - 4), LValue(-1, 2 * n - 2),
          LValue(1, 0), LValue(1, 4), LValue(-1, 0)]
    cs = CriticalSet(n, ls, ts)
    if not cs.bijective():
        raise AssertionError(f"t-set and l-set disagree for n={n}")
    return cs


def random_generic_l(rng: random.Random, n: int) -> LValue:
    """A random c*r^k with c != +-1, hence off the critical set."""
    while True:
        c = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
        if c not in (0, 1, -1):
            return LValue(c, rng.randint(-2 * n, 2 * n))


# ---------------------------------------------------------------------------
# the one-dimensional subspace

def vector_u(n: int) -> VectorExpr:
    out = {}
    for j in range(2, n + 1):
        for i in range(1, j):
            out[(i, j, True)] = R ** (i + j)
            out[(i, j, False)] = R ** (i + j + 2 * n - 4)
    return VectorExpr(out)


def u_is_eigenvector(n: int, l) -> bool:
    rep = representation(n, l)
    u = vector_u(n)
    return all(act(rep, k, u) == R * u for k in range(1, n + 1))


# ---------------------------------------------------------------------------
# the (n-1)-dimensional subspace

def vector_v1(n: int) -> VectorExpr:
    """v_1 normalized by the coefficient 1 on wh_23."""
    x = (R ** (2 * n - 6) - R ** -2) * w(1, 2)
    for j in range(3, n + 1):
        x = x + R ** (j - 5) * ((w(2, j) - R * w(1, j)) + R ** 2 * (wh(2, j) - R * wh(1, j)))
    return x


def vectors_v(n: int) -> list:
    """The closed-form vectors v_1..v_{n-1} (free of l)."""
    if n < 5:
        raise ValueError("the (n-1)-dimensional family requires n >= 5")
    out = []
    for i in range(1, n):
        x = (R ** (2 * n - 6) - R ** -2) * w(i, i + 1)
        for j in range(i + 2, n + 1):
            x = x + R ** (j - i - 4) * ((w(i + 1, j) - R * w(i, j))
                                        + R ** 2 * (wh(i + 1, j) - R * wh(i, j)))
        for s in range(1, i):
            x = x + R ** (s - i) * (R ** (2 * n - 6) * (w(s, i + 1) - R * w(s, i))
                                    + (wh(s, i + 1) - R * wh(s, i)))
        out.append(x)
    return out


def vectors_v_recursive(n: int, l) -> list:
    """v_1 followed by v_{i-1} = (1/r) nu_i(v_{i-2}) - v_{i-2} for i = 3..n."""
    rep = representation(n, l)
    vs = [vector_v1(n)]
    for i in range(3, n + 1):
        prev2 = vs[i - 3]
        vs.append((1 / rep.r) * act(rep, i, prev2) - prev2)
    return vs


def delta_system(n: int, r, unit_b: bool = False) -> list:
    """Relations nu_k(v_t) = sum c_s v_s of the (n-1)-dimensional model
    S^{(0),(n-1,1)}; entries (label, k, t, {s: c})."""
    rels = [("a'", 1, 1, {1: -1 / r}),
            ("b'", 1, 2, {1: 1 / r, 2: (1 if unit_b else r)})]
    for t in range(3, n):
        rels.append(("c'", 1, t, {t: r}))
    for i in range(2, n + 1):
        for t in range(1, n):
            if t == i:
                rels.append(("d'", i, t, {i - 1: 1 / r, i: r}))
            elif t == i - 1:
                rels.append(("e'", i, t, {t: -1 / r}))
            elif t == i - 2:
                rels.append(("f'", i, t, {t: r, t + 1: r}))
            else:
                rels.append(("g'", i, t, {t: r}))
    return rels


def nabla_system(n: int, r) -> list:
    """Relations of the conjugate model S^{(0),(2,1^{n-2})}."""
    rels = [("a", 1, 1, {1: r}), ("b", 1, 2, {1: -r, 2: -1 / r})]
    for t in range(3, n):
        rels.append(("c", 1, t, {t: -1 / r}))
    for i in range(2, n + 1):
        for t in range(1, n):
            if t == i:
                rels.append(("d", i, t, {i - 1: -r, i: -1 / r}))
            elif t == i - 1:
                rels.append(("e", i, t, {t: r}))
            elif t == i - 2:
                rels.append(("f", i, t, {t: -1 / r, t + 1: -1 / r}))
            else:
                rels.append(("g", i, t, {t: -1 / r}))
    return rels


def check_system(n: int, l, vectors: list, system: list) -> list:
    """[(label, k, t, passed)] for each relation applied to the given vectors."""
    rep = representation(n, l)
    out = []
    for label, k, t, rhs in system:
        lhs = act(rep, k, vectors[t - 1])
        want = VectorExpr()
        for s, c in rhs.items():
            want = want + c * vectors[s - 1]
        out.append((label, k, t, lhs == want))
    return out


def delta_holds(n: int, l, vectors: Optional[list] = None) -> bool:
    vs = vectors if vectors is not None else vectors_v(n)
    return all(ok for *_, ok in check_system(n, l, vs, delta_system(n, R)))


def delta_w12_residual(n: int) -> RationalFunction:
    """Coefficient of w_12 in nu_2(v_2) - (1/r) v_1 - r v_2, with l symbolic
    and v_2 generated from v_1 by the recursion."""
    rep = representation(n)
    v1 = vector_v1(n)
    v2 = (1 / rep.r) * act(rep, 3, v1) - v1
    res = act(rep, 2, v2) - (1 / rep.r) * v1 - rep.r * v2
    return as_rf(res[(1, 2, False)])


# ---------------------------------------------------------------------------
# the n(n-1)/2-dimensional subspace

def vectors_t(n: int) -> list:
    return [w(i, j) - wh(i, j) for j in range(2, n + 1) for i in range(1, j)]


def span_is_invariant(n: int, l, vectors: list) -> bool:
    """Every nu(g_k) maps span(vectors) into itself (exact rank test)."""
    rep = representation(n, l)
    dim = rep.dim
    rows = [_dense(v, n, dim) for v in vectors]
    base = rank_over_field(rows)
    for k in range(1, n + 1):
        for v in vectors:
            if rank_over_field(rows + [_dense(act(rep, k, v), n, dim)]) != base:
                return False
    return True


def _dense(v: VectorExpr, n: int, dim: int) -> list:
    row = [0] * dim
    for k, x in v.to_index(n).items():
        row[k] = x
    return row


# ---------------------------------------------------------------------------
# kernel vectors

def kernel_vectors(n: int) -> dict:
    """name -> (vector, l) for the explicit members of K(n)."""
    if n < 4:
        raise ValueError(f"n must be >= 4, got {n}")
    r = R
    out = {}
    X = ((w(2, 4) + r ** 2 * wh(2, 4)) - r * (w(1, 4) + r ** 2 * wh(1, 4))
         - r * (w(2, 3) + r ** 2 * wh(2, 3)) + r ** 2 * (w(1, 3) + r ** 2 * wh(1, 3)))
    out["X"] = (X, LValue(1, 3))
    if n >= 5:
        out["Y"] = (w(3, 4) - (1 / r) * w(3, 5) + r ** -2 * w(4, 5), LValue(-1, 3))
    else:
        out["Z"] = (r ** 3 * wh(2, 4) - r ** 2 * wh(3, 4) + w(2, 3), LValue(-1, 3))
    c = r ** (2 * n - 6)
    J = ((wh(1, 2) + c * w(1, 2)) - (1 / r) * (wh(1, 3) + c * w(1, 3)) - (1 + c) * w(2, 3))
    for j in range(4, n + 1):
        J = J + r * r ** (j - 5) * ((w(3, j) - wh(3, j)) - r * (w(2, j) - wh(2, j)))
    out["J"] = (J, LValue(-1, 5 - 2 * n))
    return out


def kernel_vector(n: int, name: str):
    vecs = kernel_vectors(n)
    if name not in vecs:
        raise ValueError(f"vector {name} is not defined for n={n}")
    return vecs[name]


def in_k(n: int, x: VectorExpr, l) -> bool:
    """x is annihilated by every conjugate C_ij, Ch_ij at l."""
    return in_kernel(n, x.to_index(n), representation(n, l))


def in_kernel_span(n: int, x: VectorExpr, l: LValue) -> bool:
    """x lies in the span of the basis returned by kernel_at."""
    kb = kernel_at(n, l).basis
    dim = n * (n - 1)
    rows = [[as_rf(v.get(j, 0)) for j in range(dim)] for v in kb]
    return rank_over_field(rows + [_dense(x, n, dim)]) == rank_over_field(rows)


# ---------------------------------------------------------------------------

def e_annihilation_check(vectors: list, n: int, l) -> bool:
    """nu(e_i) x = 0 for every i and every x."""
    rep = representation(n, l)
    for x in vectors:
        xi = x.to_index(n) if isinstance(x, VectorExpr) else x
        for i in range(1, n + 1):
            if rep.e(i).apply(xi):
                return False
    return True


def full_space(n: int) -> list:
    return [VectorExpr.unit(lab.i, lab.j, lab.hatted) for lab in basis(n).labels]


# ---------------------------------------------------------------------------
# degree-4 and degree-2 models of H(D_4)

def _mat(rows):
    return [[as_rf(x) for x in row] for row in rows]


def _mm(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), as_rf(0))
             for j in range(len(B[0]))] for i in range(len(A))]


def _madd(A, B, c=1):
    return [[a + c * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _eye(k):
    return _mat([[1 if i == j else 0 for j in range(k)] for i in range(k)])


def h_matrices() -> list:
    r = R
    H1 = _mat([[r, 0, 0, 0],
               [-r ** 2 + r ** -2, r ** -3, -r ** -2 - r ** -4, 0],
               [-r ** 3 + 1 / r, -r ** 2 + r ** -2, r - r ** -3 - 1 / r, 0],
               [1 - r ** 2, 1 / r - r, -r ** -2, r]])
    H2 = _mat([[r, 0, 0, 0], [0, r, 0, 0], [0, 0, r, 0], [0, 0, 1, -1 / r]])
    H3 = _mat([[r, 0, 0, 0], [0, r, 0, 0], [0, 1, -1 / r, 1], [0, 0, 0, r]])
    H4 = _mat([[r - 1 / r, 1, -1 / r, 0], [1, 0, 1, 0], [0, 0, r, 0], [0, 0, 0, r]])
    return [H1, H2, H3, H4]


def j_matrices() -> list:
    r = R
    J1 = _mat([[-1 / r, 1], [0, r]])
    J3 = _mat([[r, 0], [1, -1 / r]])
    return [J1, J1, J3, J1]


def d4_relations(mats: list) -> dict:
    """D_4 Hecke relations for matrices indexed 1..4 (node 3 is central)."""
    m = 1 / R - R
    I = _eye(len(mats[0]))
    G = dict(enumerate(mats, start=1))
    out = {}
    for i in range(1, 5):
        out[f"quadratic_{i}"] = _madd(_mm(G[i], G[i]), G[i], m) == I
    for i, j in ((1, 3), (2, 3), (3, 4)):
        out[f"braid_{i}{j}"] = _mm(_mm(G[i], G[j]), G[i]) == _mm(_mm(G[j], G[i]), G[j])
    for i, j in ((1, 2), (1, 4), (2, 4)):
        out[f"commute_{i}{j}"] = _mm(G[i], G[j]) == _mm(G[j], G[i])
    return out


def joint_eigenspace_dim(mats: list, eigenvalue=None) -> int:
    """dim {u : M u = eigenvalue * u for every M} over Q(r)."""
    lam = R if eigenvalue is None else eigenvalue
    k = len(mats[0])
    rows = []
    for Mx in mats:
        rows.extend(_madd(Mx, _eye(k), -lam))
    return k - rank_over_field(rows)


def h_matrices_check() -> dict:
    out = d4_relations(h_matrices())
    out["joint_r_eigenvector_dim_zero"] = joint_eigenspace_dim(h_matrices()) == 0
    return out


def j_matrices_check() -> bool:
    return all(d4_relations(j_matrices()).values())


# ---------------------------------------------------------------------------
# linear searches at a numeric point

def _numeric_mats(n: int, l0, r0):
    rep = Rep(n, Fraction(l0), Fraction(r0))
    N = rep.dim
    G = {k: rep.g[k].to_dense(Fraction(0)) for k in range(1, n + 1)}
    return rep, N, G


def _mmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col) if a and b) for col in Bt] for row in A]


def relation_search(n: int, system: str, l0, r0, omit: tuple = ()) -> int:
    """Dimension of the space of v_1 for which the vectors generated by the
    (f)-recursion satisfy the chosen relation system at (l0, r0)."""
    rep, N, G = _numeric_mats(n, l0, r0)
    r = Fraction(r0)
    I = [[Fraction(int(i == j)) for j in range(N)] for i in range(N)]
    if system == "nabla":
        rels = nabla_system(n, r)
        step = lambda Gi, T: [[-r * x - y for x, y in zip(a, b)] for a, b in zip(_mmul(Gi, T), T)]
    elif system == "delta":
        rels = delta_system(n, r)
        step = lambda Gi, T: [[x / r - y for x, y in zip(a, b)] for a, b in zip(_mmul(Gi, T), T)]
    else:
        raise ValueError(f"unknown system {system!r}")
    T = [I]
    for i in range(3, n + 1):
        T.append(step(G[i], T[i - 3]))
    rows = []
    for label, k, t, rhs in rels:
        if label.rstrip("'") in omit:
            continue
        lhs = _mmul(G[k], T[t - 1])
        for s, c in rhs.items():
            c = Fraction(c)
            lhs = [[x - c * y for x, y in zip(a, b)] for a, b in zip(lhs, T[s - 1])]
        rows.extend(row for row in lhs if any(row))
    return N - rank_over_field(rows) if rows else N


def nabla_search(n: int, seed: int = 0, omit: tuple = ()) -> int:
    """Solution dimension for the (2,1^{n-2}) model at a random point; 0 means
    that module does not occur."""
    rng = random.Random(seed)
    from .field import random_points
    (l0, r0), = random_points(1, rng.getrandbits(32), n, bound=50)
    return relation_search(n, "nabla", l0, r0, omit)


def eigen_search(n: int, l0, r0) -> int:
    """dim {u : nu(g_k) u = r u for all k} at a numeric point."""
    rep, N, G = _numeric_mats(n, l0, r0)
    r = Fraction(r0)
    rows = []
    for k in range(1, n + 1):
        rows.extend([[x - (r if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(G[k])])
    return N - rank_over_field(rows)


theorem10_vectors = kernel_vectors
