"""The Cohen-Wales representation of the CGW algebra of type D_n.

The space V_n has basis w_ij, wh_ij (1 <= i < j <= n); wh is the hatted
vector, carrying 1 in its support.  Matrices act on column vectors, and column
c of nu(g_k) is the image of basis vector c.

Matrices are built over any exact scalar type: RationalFunction for
identities in Q(l, r), a univariate RationalFunction when l = c*r^k, or
Fraction at a numeric point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

from .field import L, R, ONE, LValue, RationalFunction, as_rf, format_poly


class RootLabel(NamedTuple):
    i: int
    j: int
    hatted: bool

    def key(self) -> str:
        return f"{'wh' if self.hatted else 'w'}_{self.i}_{self.j}"

    @classmethod
    def from_key(cls, key: str) -> "RootLabel":
        kind, i, j = key.split("_")
        if kind not in ("w", "wh"):
            raise ValueError(f"bad basis key {key!r}")
        return cls(int(i), int(j), kind == "wh")


class BasisIndex:
    """Ordered basis of V_n; labels with j = n come last."""

    def __init__(self, n: int):
        if n < 4:
            raise ValueError(f"n must be >= 4, got {n}")
        self.n = n
        self.labels = [RootLabel(i, j, h) for j in range(2, n + 1)
                       for i in range(1, j) for h in (True, False)]
        self.index = {lab: k for k, lab in enumerate(self.labels)}

    def __len__(self):
        return len(self.labels)

    def __call__(self, i, j, hatted=False) -> int:
        return self.index[RootLabel(i, j, hatted)]

    def keys(self):
        return [lab.key() for lab in self.labels]


@lru_cache(maxsize=None)
def basis(n: int) -> BasisIndex:
    return BasisIndex(n)


def adjacent(i: int, j: int) -> bool:
    """Edges of the D_n diagram: 1-3 and i-(i+1) for i >= 2."""
    return (abs(i - j) == 1 and i >= 2 and j >= 2) or {i, j} == {1, 3}


class RepMatrix:
    """Sparse square matrix; rows[i] maps column -> nonzero entry."""

    __slots__ = ("dim", "rows")

    def __init__(self, dim: int, entries=None):
        self.dim = dim
        self.rows = {}
        if entries:
            for (i, j), v in entries.items():
                if v:
                    self.rows.setdefault(i, {})[j] = v

    @classmethod
    def identity(cls, dim, one=ONE):
        return cls(dim, {(k, k): one for k in range(dim)})

    @classmethod
    def _from_rows(cls, dim, rows):
        A = cls.__new__(cls)
        A.dim = dim
        A.rows = {i: row for i, row in rows.items() if row}
        return A

    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, 0)

    def entries(self):
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def nnz(self):
        return sum(len(r) for r in self.rows.values())

    def column(self, j) -> dict:
        return {i: row[j] for i, row in self.rows.items() if j in row}

    def __matmul__(self, other):
        if isinstance(other, dict):
            return self.apply(other)
        out = {}
        brows = other.rows
        for i, row in self.rows.items():
            acc = {}
            for k, a in row.items():
                brow = brows.get(k)
                if not brow:
                    continue
                for j, b in brow.items():
                    v = acc.get(j)
                    acc[j] = a * b if v is None else v + a * b
            out[i] = {j: v for j, v in acc.items() if v}
        return RepMatrix._from_rows(self.dim, out)

    def apply(self, vec: dict) -> dict:
        """Matrix times sparse column vector {index: value}."""
        out = {}
        for i, row in self.rows.items():
            s = None
            for k, v in vec.items():
                a = row.get(k)
                if a is not None:
                    s = a * v if s is None else s + a * v
            if s is not None and s:
                out[i] = s
        return out

    def rapply(self, vec: dict) -> dict:
        """Sparse row vector times matrix."""
        out = {}
        for k, v in vec.items():
            row = self.rows.get(k)
            if not row:
                continue
            for j, a in row.items():
                w = out.get(j)
                out[j] = v * a if w is None else w + v * a
        return {j: x for j, x in out.items() if x}

    def _combine(self, other, sign):
        out = {i: dict(row) for i, row in self.rows.items()}
        for i, row in other.rows.items():
            tgt = out.setdefault(i, {})
            for j, b in row.items():
                v = tgt.get(j)
                if v is None:
                    tgt[j] = b if sign > 0 else -b
                else:
                    w = v + b if sign > 0 else v - b
                    if w:
                        tgt[j] = w
                    else:
                        del tgt[j]
        return RepMatrix._from_rows(self.dim, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if not c:
            return RepMatrix(self.dim)
        return RepMatrix._from_rows(
            self.dim, {i: {j: c * v for j, v in row.items()} for i, row in self.rows.items()})

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, RepMatrix) or other.dim != self.dim:
            return NotImplemented
        keys = set(self.rows) | set(other.rows)
        for i in keys:
            a, b = self.rows.get(i, {}), other.rows.get(i, {})
            for j in set(a) | set(b):
                if a.get(j, 0) != b.get(j, 0):
                    return False
        return True

    def is_zero(self):
        return not any(self.rows.values())

    def map(self, f):
        return RepMatrix(self.dim, {(i, j): f(v) for i, j, v in self.entries()})

    def to_dense(self, zero=0):
        M = [[zero] * self.dim for _ in range(self.dim)]
        for i, j, v in self.entries():
            M[i][j] = v
        return M

    def to_json(self, n: int) -> dict:
        return {
            "n": n,
            "labels": basis(n).keys(),
            "entries": [[i, j, str(as_rf(v))] for i, j, v in self.entries()],
        }


def _build_g(n: int, k: int, l, r, m) -> RepMatrix:
    """nu(g_k) from the closed-form action on the basis."""
    B = basis(n)
    W = B
    ent = {}

    def put(src, terms):
        for c, dst in terms:
            key = (dst, src)
            v = ent.get(key)
            ent[key] = c if v is None else v + c

    for (a, b, h) in B.labels:
        s = W(a, b, h)
        if k == 1:
            if h and a >= 3:
                i, j = a, b
                c12 = m * m * (r ** (i + j - 8) + r ** (i + j - 6))
                put(s, [(m * r ** (j - 5), W(1, i, True)), (-m * r ** (j - 5), W(1, i)),
                        (m * r ** (j - 4), W(2, i, True)), (-m * r ** (j - 4), W(2, i)),
                        (m * r ** (i - 3), W(1, j, True)), (-m * r ** (i - 3), W(1, j)),
                        (m * r ** (i - 2), W(2, j, True)), (-m * r ** (i - 2), W(2, j)),
                        (c12, W(1, 2, True)), (-c12, W(1, 2)),
                        (r, W(i, j, True))])
            elif h and a == 1 and b >= 3:
                put(s, [(1, W(2, b))])
            elif h and a == 2:
                put(s, [(1, W(1, b)), (m * r ** (b - 3), W(1, 2)), (-m, W(2, b))])
            elif not h and a == 2:
                put(s, [(1, W(1, b, True)), (m * r ** (b - 3), W(1, 2, True)), (-m, W(2, b))])
            elif not h and a == 1 and b >= 3:
                put(s, [(1, W(2, b, True)), (m * r ** (b - 4), W(1, 2, True)),
                        (-m * r ** (b - 4), W(1, 2)), (m, W(1, b, True)), (-m, W(1, b))])
            elif h and (a, b) == (1, 2):
                put(s, [(1 / l, s)])
            else:
                put(s, [(r, s)])
        else:
            if a == k - 1 and b >= k + 1:
                put(s, [(1, W(k, b, h))])
            elif b == k - 1:
                put(s, [(1, W(a, k, h))])
            elif a == k - 1 and b == k:
                put(s, [(r if h else 1 / l, s)])
            elif a == k and h:
                put(s, [(1, W(k - 1, b, True)), (m / l * r ** (b - k - 2), W(k - 1, k)), (-m, s)])
            elif a == k:
                put(s, [(1, W(k - 1, b)), (m * r ** (b - k - 1), W(k - 1, k)), (-m, s)])
            elif b == k and a <= k - 2:
                put(s, [(1, W(a, k - 1, h)), (m / (l * r ** (k - a - 2)), W(k - 1, k)), (-m, s)])
            else:
                put(s, [(r, s)])
    return RepMatrix(len(B), ent)


class Rep:
    """Generators nu(g_k), nu(g_k^-1), nu(e_k) for fixed n and scalars (l, r).

    `g` may override generator matrices (used for mutation tests)."""

    def __init__(self, n: int, l=None, r=None, g: Optional[dict] = None):
        self.basis = basis(n)
        self.n = n
        self.l, self.r = scalars(l, r)
        self.m = 1 / self.r - self.r
        self.one = ONE if isinstance(self.r, RationalFunction) else Fraction(1)
        self.dim = len(self.basis)
        self.I = RepMatrix.identity(self.dim, self.one)
        self.g = {k: _build_g(n, k, self.l, self.r, self.m) for k in range(1, n + 1)}
        if g:
            self.g.update(g)
        self._e = {}
        self._gi = {}

    @property
    def delta(self):
        return 1 - (self.l - 1 / self.l) / self.m

    def e(self, k: int) -> RepMatrix:
        if k not in self._e:
            g = self.g[k]
            self._e[k] = ((g @ g) + g.scale(self.m) - self.I).scale(self.l / self.m)
        return self._e[k]

    def ginv(self, k: int) -> RepMatrix:
        if k not in self._gi:
            self._gi[k] = self.g[k] - self.e(k).scale(self.m) + self.I.scale(self.m)
        return self._gi[k]

    def check(self, k: int) -> None:
        if not 1 <= k <= self.n:
            raise IndexError(f"generator index {k} out of range 1..{self.n}")


def scalars(l=None, r=None):
    """Resolve (l, r) to scalars: symbolic by default, univariate when l is an
    LValue and r is None, and Fractions when r is numeric."""
    if r is None:
        rr = R
        if l is None:
            ll = L
        elif isinstance(l, LValue):
            ll = l.as_rf()
        else:
            raise ValueError("a numeric l requires a numeric r")
    else:
        rr = Fraction(r)
        if l is None:
            raise ValueError("a numeric r requires l as well")
        ll = l.value_at(rr) if isinstance(l, LValue) else Fraction(l)
    return ll, rr


@lru_cache(maxsize=64)
def representation(n: int, l=None, r=None) -> Rep:
    return Rep(n, l, r)


def nu_g(n: int, i: int, l=None, r=None) -> RepMatrix:
    rep = representation(n, l, r)
    rep.check(i)
    return rep.g[i]


def nu_e(n: int, i: int, l=None, r=None) -> RepMatrix:
    rep = representation(n, l, r)
    rep.check(i)
    return rep.e(i)


def nu_g_inv(n: int, i: int, l=None, r=None) -> RepMatrix:
    rep = representation(n, l, r)
    rep.check(i)
    return rep.ginv(i)


@dataclass
class RelationCheck:
    name: str
    indices: tuple
    passed: bool

    def to_json(self):
        return {"relation": self.name, "indices": list(self.indices), "passed": self.passed}


@dataclass
class RelationReport:
    n: int
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self):
        return {"n": self.n, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def verify_relations(n: int, l=None, r=None, rep: Optional[Rep] = None) -> RelationReport:
    """Check the CGW defining relations and their standard consequences as
    exact matrix identities."""
    if n < 4:
        raise ValueError(f"n must be >= 4, got {n}")
    rep = rep or representation(n, l, r)
    g, e, gi = rep.g, rep.e, rep.ginv
    lv, m = rep.l, rep.m
    inv_l = 1 / lv
    rpt = RelationReport(n)

    def add(name, idx, ok):
        rpt.checks.append(RelationCheck(name, idx, bool(ok)))

    nodes = range(1, n + 1)
    for i in nodes:
        for j in nodes:
            if i >= j:
                continue
            if adjacent(i, j):
                add("braid", (i, j), g[i] @ g[j] @ g[i] == g[j] @ g[i] @ g[j])
            else:
                add("commute", (i, j), g[i] @ g[j] == g[j] @ g[i])
    for i in nodes:
        gie = g[i] @ e(i)
        add("g_inverse", (i,), g[i] @ gi(i) == rep.I)
        add("ge=eg", (i,), gie == e(i) @ g[i])
        add("ge=e/l", (i,), gie == e(i).scale(inv_l))
        add("ee=delta*e", (i,), e(i) @ e(i) == e(i).scale(rep.delta))
        add("quadratic", (i,),
            (g[i] @ g[i] + g[i].scale(m) - rep.I - e(i).scale(m / lv)).is_zero())
    for i in nodes:
        for j in nodes:
            if i == j or not adjacent(i, j):
                continue
            add("ege=l*e", (i, j), e(i) @ g[j] @ e(i) == e(i).scale(lv))
            add("eee=e", (i, j), e(i) @ e(j) @ e(i) == e(i))
            add("gge=ee", (i, j), g[j] @ g[i] @ e(j) == e(i) @ e(j))
    return rpt


def rank_one_factors(A: RepMatrix):
    """For a rank-one matrix return (col, row) sparse vectors with A = col * row."""
    if A.is_zero():
        raise ValueError("zero matrix")
    i0 = min(A.rows)
    row = dict(A.rows[i0])
    j0 = min(row)
    pivot = row[j0]
    col = {i: r[j0] / pivot for i, r in A.rows.items() if j0 in r}
    return col, row


def vector_to_json(vec: dict, n: int) -> dict:
    labels = basis(n).labels
    return {labels[k].key(): str(as_rf(v)) for k, v in sorted(vec.items())}
