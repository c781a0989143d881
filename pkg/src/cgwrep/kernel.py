"""Conjugates of the e_k, the sum matrix S(n), and its kernel K(n).

Each conjugate X e_k X^-1 has rank one, so it is stored as an outer product
c (x) phi with c = X*col and phi = row*X^-1 where e_k = col (x) row.
K(n) is the common kernel of the conjugates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .field import (L, R, M, ONE, BiLaurentPoly, FactoredForm, LValue, RationalFunction,
                    as_rf, parse, probabilistic_identity, trial_factor)
from .linalg import (clear_row, det_exact, matvec_is_zero, rank_kernel, to_prows,
                     bareiss_det)
from .rep import Rep, RepMatrix, basis, rank_one_factors, representation


class ConjugateSpec(NamedTuple):
    i: int
    j: int
    hatted: bool

    def name(self) -> str:
        return f"{'Ch' if self.hatted else 'C'}_{self.i}_{self.j}"


def path(s: int, t: int) -> list:
    """Node indices from s to t inclusive, in the order written."""
    return list(range(s, t - 1, -1)) if s >= t else list(range(s, t + 1))


def conjugate_word(spec: ConjugateSpec):
    """(left indices, e index, right indices) with the right factors inverted."""
    i, j, h = spec
    if not h:
        if j == i + 1:
            return [], i + 1, []
        return path(j, i + 2), i + 1, path(i + 2, j)
    if (i, j) == (1, 2):
        return [], 1, []
    if i == 1:
        return path(j, 3), 1, path(3, j)
    return path(i, 2) + path(j, 3), 1, path(3, j) + path(2, i)


def conjugate_specs(n: int) -> list:
    return [ConjugateSpec(lab.i, lab.j, lab.hatted) for lab in basis(n).labels]


def _rep(n, l=None, r=None, rep=None) -> Rep:
    return rep if rep is not None else representation(n, l, r)


def g_path(n: int, s: int, t: int, starred: bool = False, l=None, r=None, rep=None) -> RepMatrix:
    rep = _rep(n, l, r, rep)
    out = rep.I
    for k in path(s, t):
        out = out @ (rep.ginv(k) if starred else rep.g[k])
    return out


def c_matrix_literal(n: int, spec: ConjugateSpec, l=None, r=None, rep=None) -> RepMatrix:
    """The conjugate as the literal matrix product."""
    rep = _rep(n, l, r, rep)
    left, k, right = conjugate_word(spec)
    out = rep.I
    for a in left:
        out = out @ rep.g[a]
    out = out @ rep.e(k)
    for a in right:
        out = out @ rep.ginv(a)
    return out


def conjugate_factors(n: int, spec: ConjugateSpec, l=None, r=None, rep=None):
    """(c, phi) with C = c (x) phi."""
    rep = _rep(n, l, r, rep)
    cache = rep.__dict__.setdefault("_conj", {})
    if spec in cache:
        return cache[spec]
    left, k, right = conjugate_word(spec)
    col, row = rank_one_factors(rep.e(k))
    for a in reversed(left):
        col = rep.g[a].apply(col)
    for a in right:
        row = rep.ginv(a).rapply(row)
    cache[spec] = (col, row)
    return col, row


def _outer(dim, col, row) -> RepMatrix:
    return RepMatrix(dim, {(i, j): a * b for i, a in col.items() for j, b in row.items()})


def c_matrix(n: int, spec: ConjugateSpec, l=None, r=None, rep=None) -> RepMatrix:
    rep = _rep(n, l, r, rep)
    col, row = conjugate_factors(n, spec, rep=rep)
    return _outer(rep.dim, col, row)


def sum_matrix(n: int, l=None, r=None, rep=None) -> RepMatrix:
    """S(n), the sum of all n(n-1) conjugates."""
    rep = _rep(n, l, r, rep)
    acc = {}
    for spec in conjugate_specs(n):
        col, row = conjugate_factors(n, spec, rep=rep)
        for i, a in col.items():
            tgt = acc.setdefault(i, {})
            for j, b in row.items():
                v = tgt.get(j)
                tgt[j] = a * b if v is None else v + a * b
    return RepMatrix(rep.dim, {(i, j): v for i, row in acc.items() for j, v in row.items()})


# ---------------------------------------------------------------------------
# determinant

def det_s7_closed_form() -> RationalFunction:
    """Closed form of det S(7) as a product of linear factors in l."""
    return parse("(-1+l*r)^21*(l-r^3)^14*(l+r^3)^35*(-1+l*r^7)^6*(1+l*r^9)^7*(-1+l*r^21)"
                 "/(l^42*r^105*(r^2-1)^42)")


def det_at_point(n: int, l0, r0) -> Fraction:
    """det S(n) at a rational point (l0, r0)."""
    rep = Rep(n, Fraction(l0), Fraction(r0))
    S = sum_matrix(n, rep=rep)
    rows = []
    scale = Fraction(1)
    for i in range(rep.dim):
        row = S.rows.get(i, {})
        den = 1
        for v in row.values():
            den = den * v.denominator // _gcd(den, v.denominator)
        scale *= den
        rows.append([int(row.get(j, 0) * den) for j in range(rep.dim)])
    return Fraction(bareiss_det(rows)) / scale


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def det_symbolic(n: int) -> RationalFunction:
    return det_exact(sum_matrix(n), n * (n - 1))


def det_sum(n: int, mode: str = "symbolic", points: int = 10, seed: int = 0,
            target: Optional[RationalFunction] = None, allow_large: bool = False):
    """Symbolic: trial-factored det S(n).  Probabilistic: True iff det S(n)
    equals `target` (for n = 7 the closed form by default) at `points`
    random admissible points."""
    if mode == "symbolic":
        if n >= 7 and not allow_large:
            raise ValueError(f"symbolic determinant refused for n={n}: a "
                             f"{n * (n - 1)}x{n * (n - 1)} bivariate determinant is too expensive; "
                             "use --mode probabilistic")
        return trial_factor(det_symbolic(n), n=n)
    if mode == "probabilistic":
        if target is None:
            if n != 7:
                raise ValueError("probabilistic mode needs a target closed form for n != 7")
            target = det_s7_closed_form()
        if isinstance(target, FactoredForm):
            target = target.expand()
        return probabilistic_identity(lambda a, b: det_at_point(n, a, b), target,
                                      points=points, seed=seed, n=n)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# kernel

@dataclass
class KernelReport:
    n: int
    l: LValue
    k: int
    rank: int
    basis: list = field(default_factory=list)

    def to_json(self, with_basis: bool = False) -> dict:
        out = {"n": self.n, "l": str(self.l), "rank": self.rank, "k": self.k}
        if with_basis:
            labels = basis(self.n).labels
            out["basis"] = [{labels[j].key(): str(p) for j, p in sorted(v.items())}
                            for v in self.basis]
        return out


def conjugate_rows(n: int, rep: Rep) -> list:
    """Integer-polynomial forms of every phi_ij (phi scaled by a nonzero factor)."""
    cache = rep.__dict__.setdefault("_phirows", None)
    if cache is None:
        cache = [clear_row(conjugate_factors(n, s, rep=rep)[1])[1] for s in conjugate_specs(n)]
        rep._phirows = cache
    return cache


def in_kernel(n: int, vec: dict, rep: Rep) -> bool:
    """True iff every conjugate annihilates vec (exact)."""
    if not vec:
        return True
    _, pvec = clear_row(vec)
    return matvec_is_zero(conjugate_rows(n, rep), pvec)


def kernel_at(n: int, l: LValue) -> KernelReport:
    """k(n) and a kernel basis of S(n) over Q(r) at l = c*r^k."""
    if isinstance(l, str):
        l = LValue.parse(l)
    rep = representation(n, l)
    S = sum_matrix(n, rep=rep)
    rank, kb = rank_kernel(S, rep.dim)
    prows = conjugate_rows(n, rep)
    for vec in kb:
        if not matvec_is_zero(prows, vec):
            raise ArithmeticError("kernel vector not annihilated by an individual conjugate")
    return KernelReport(n, l, rep.dim - rank, rank, kb)


def verify_kernel_invariance(n: int, l: LValue, seed: int = 0, vectors: Optional[list] = None) -> bool:
    """S(n) * (nu(g_k) x) = 0 for every x (kernel basis by default, plus a
    random integer combination) and every k."""
    if isinstance(l, str):
        l = LValue.parse(l)
    rep = representation(n, l)
    if vectors is None:
        vectors = kernel_at(n, l).basis
        if not vectors:
            raise ValueError("kernel is trivial")
        rng = random.Random(seed)
        combo = {}
        for v in vectors:
            c = rng.randint(-9, 9) or 1
            for j, p in v.items():
                combo[j] = combo.get(j, 0) + p * c
        combo = {j: p for j, p in combo.items() if p}
        if combo:
            vectors = list(vectors) + [combo]
    S = sum_matrix(n, rep=rep)
    _, srows = to_prows(S, rep.dim)
    for x in vectors:
        xr = {j: as_rf(p) for j, p in x.items()}
        for k in range(1, n + 1):
            y = rep.g[k].apply(xr)
            if not y:
                continue
            _, py = clear_row(y)
            if not matvec_is_zero(srows, py):
                return False
    return True


# ---------------------------------------------------------------------------
# action table of the conjugates on basis vectors

ACTION_CASES = ("LONHNH", "LONHH", "LOHNH", "LOHH", "LINHNH", "LINHH", "LIHH", "LIHNH",
               "INHH", "IHNH", "IHH", "ELOHH", "LCNHNH", "LCNHH", "LCHNH", "LCHH")


def _action_case(case: str, i: int, j: int, s: int, t: int):
    """(conjugate hatted?, input label, rhs coefficient, rhs hatted?)."""
    l, r, m = L, R, M
    if case == "LONHNH":
        return False, (i - s, i, False), r ** (-((j - i) + (s - 2))), False
    if case == "LONHH":
        return False, (i - s, i, True), r ** (-((j - i) + (s - 2))), False
    if case == "LOHNH":
        return True, (i - s, i, False), l / r ** ((j - i) + (s - 3)), True
    if case == "LOHH":
        return True, (i - s, i, True), 1 / (l * r ** ((j - i) + (s - 1))), True
    if case == "LINHNH":
        return False, (i, j - s, False), 1 / (l * r ** (s - 1)), False
    if case == "LINHH":
        return False, (i, j - s, True), r ** (-(s - 2)), False
    if case == "LIHH":
        return True, (i, j - s, True), 1 / (l * r ** (s - 1)), True
    if case == "LIHNH":
        return True, (i, j - s, False), r ** (-(s - 2)), True
    if case == "INHH":
        return False, (i + t, j - s, True), m * r ** (t - s - 2) / l * (1 - l * r) * (1 + r ** 2), False
    if case == "IHNH":
        return True, (i + t, j - s, False), as_rf(0), True
    if case == "IHH":
        return True, (i + t, j - s, True), as_rf(0), True
    if case == "ELOHH":
        return True, (i - s, i - t, True), m / (l * r ** (j - i + s + t - 2)) * (1 - l * r) * (1 + r ** 2), True
    if case == "LCNHNH":
        return False, (i - s, j - t, False), m / r ** (s + t - 2) * (1 / l - 1 / r), False
    if case == "LCNHH":
        return False, (i - s, j - t, True), m / r ** (s + t - 2) * (1 / l - 1 / r), False
    if case == "LCHNH":
        return True, (i - s, j - t, False), m / r ** (t + s - 2) * (r - l), True
    if case == "LCHH":
        return True, (i - s, j - t, True), m / r ** (t + s - 2) * (1 / l - 1 / r), True
    raise ValueError(f"unknown case {case!r}")


def _uses(case: str):
    """Which of s, t the case depends on."""
    if case.startswith(("LO", "LI")):
        return (True, False)
    return (True, True)


def action_entry_valid(n: int, case: str, i: int, j: int, s: int, t: int = 0) -> bool:
    """Index ranges implied by the shape of each formula."""
    if not (1 <= i < j <= n and s >= 1):
        return False
    if case.startswith("LO"):
        return i - s >= 1
    if case.startswith("LI"):
        return j - s > i
    if case.startswith("I"):
        return t >= 1 and i + t < j - s
    if case == "ELOHH":
        return t >= 1 and s > t and i - s >= 1
    if case.startswith("LC"):
        return t >= 1 and i - s >= 1 and j - t > i
    return False


def verify_action_entry(n: int, case: str, indices: tuple) -> bool:
    """Compare the conjugate applied to a basis vector with the expected table entry."""
    i, j, s = indices[:3]
    t = indices[3] if len(indices) > 3 else 0
    if not action_entry_valid(n, case, i, j, s, t):
        raise ValueError(f"indices {indices} out of range for {case} at n={n}")
    hat, (a, b, h), coeff, rhat = _action_case(case, i, j, s, t)
    rep = representation(n)
    B = basis(n)
    col, row = conjugate_factors(n, ConjugateSpec(i, j, hat), rep=rep)
    x = row.get(B(a, b, h), 0)
    got = {k: v * x for k, v in col.items() if x}
    want = {B(i, j, rhat): coeff} if coeff else {}
    keys = set(got) | set(want)
    return all(as_rf(got.get(k, 0)) == as_rf(want.get(k, 0)) for k in keys)


@dataclass
class ActionSweep:
    n: int
    checked: int = 0
    passed: int = 0
    exclusions: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checked == self.passed + len(self.exclusions)

    def to_json(self):
        return {"n": self.n, "checked": self.checked, "passed": self.passed,
                "exclusions": [list(e) for e in self.exclusions]}


def action_table_sweep(n: int) -> ActionSweep:
    """Check every case at every valid (i, j, s, t); failures are recorded as
    exclusions (case, i, j, s, t)."""
    out = ActionSweep(n)
    for case in ACTION_CASES:
        need_t = _uses(case)[1]
        for j in range(2, n + 1):
            for i in range(1, j):
                for s in range(1, n):
                    for t in (range(1, n) if need_t else (0,)):
                        if not action_entry_valid(n, case, i, j, s, t):
                            continue
                        out.checked += 1
                        if verify_action_entry(n, case, (i, j, s, t)):
                            out.passed += 1
                        else:
                            out.exclusions.append((case, i, j, s, t))
    return out


verify_lemma5 = verify_kernel_invariance
verify_prop2 = verify_action_entry
