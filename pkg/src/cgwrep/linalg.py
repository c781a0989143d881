"""Exact determinant, rank and kernel over Q(l, r) and Q(r).

Rows are first cleared to integer polynomials (one multiplier per row).
Fraction-free Bareiss elimination then runs on the images of the entries
under l -> 2^(B*D), r -> 2^B.  B and D come from bounds on the coefficients
and r-degrees of every minor of the cleared matrix, so this substitution is
injective on all intermediate values: zero tests are exact and results
unpack digit by digit back into polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover
    mpz = int

from .field import (BiLaurentPoly, RationalFunction, _ONE, as_rf, poly_gcd, _clean)


def _lcm_int(a, b):
    return a * b // igcd(a, b)


def clear_row(row: dict):
    """Scale a sparse row of RationalFunctions to integer polynomials.

    Returns (mult, prow) with prow[j] = mult * row[j] a BiLaurentPoly with
    integer coefficients and nonnegative exponents."""
    if not row:
        return as_rf(1), {}
    vals = {j: as_rf(v) for j, v in row.items()}
    den = _ONE
    for v in vals.values():
        if v.den != _ONE and den != v.den:
            g = poly_gcd(den, v.den)
            den = den * v.den.exact_div(g)
    polys = {}
    for j, v in vals.items():
        if v.den == _ONE:
            polys[j] = v.num * den
        else:
            polys[j] = v.num * den.exact_div(v.den)
    cden = 1
    amin = bmin = None
    for p in polys.values():
        for (a, b), c in p.terms.items():
            if type(c) is Fraction:
                cden = _lcm_int(cden, c.denominator)
            amin = a if amin is None or a < amin else amin
            bmin = b if bmin is None or b < bmin else bmin
    out = {}
    for j, p in polys.items():
        out[j] = BiLaurentPoly._raw({(a - amin, b - bmin): int(c * cden) for (a, b), c in p.terms.items()})
    mult = RationalFunction(BiLaurentPoly.monomial(cden, -amin, -bmin) * den)
    return mult, out


def _norm1(p: BiLaurentPoly) -> int:
    return sum(abs(c) for c in p.terms.values())


class Packing:
    """Substitution r -> 2^B, l -> 2^(B*D) for integer polynomials with
    coefficients below 2^(B-1) in absolute value and r-degree below D."""

    def __init__(self, coeff_bound: int, rdeg_bound: int, ldeg_bound: int, bits: int = None):
        B = coeff_bound.bit_length() + 2 if bits is None else bits
        self.B = (B + 7) // 8 * 8
        self.D = rdeg_bound + 1
        self.slots = (ldeg_bound + 1) * self.D

    def pack(self, p: BiLaurentPoly):
        B, D = self.B, self.D
        pos = neg = 0
        for (a, b), c in p.terms.items():
            if c > 0:
                pos |= c << (B * (a * D + b))
            else:
                neg |= (-c) << (B * (a * D + b))
        return mpz(pos - neg)

    def unpack(self, value) -> BiLaurentPoly:
        B, D = self.B, self.D
        K = self.slots
        nbytes = B // 8
        half = 1 << (B - 1)
        offset = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * K, "little")
        M = int(value) + offset
        if M < 0 or M.bit_length() > B * K:
            raise OverflowError("value outside the packing range")
        raw = M.to_bytes(nbytes * K, "little")
        terms = {}
        for k in range(K):
            d = int.from_bytes(raw[k * nbytes:(k + 1) * nbytes], "little") - half
            if d:
                terms[divmod(k, D)] = d
        return BiLaurentPoly._raw(terms)


def packing_for(prows: list, ncols: int, bits: int = None) -> Packing:
    """Bounds valid for every minor of the matrix with the given rows; `bits`
    overrides the coefficient slot width."""
    H = 1
    rdeg = 0
    ldeg = 0
    for prow in prows:
        H *= max(1, sum(_norm1(p) for p in prow.values()))
        if prow:
            rdeg += max(max(b for _, b in p.terms) for p in prow.values())
            ldeg += max(max(a for a, _ in p.terms) for p in prow.values())
    return Packing(H, rdeg, ldeg, bits)


def bareiss_det(M: list):
    """Determinant of a square list-of-lists over an integral domain with exact //."""
    A = [list(row) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = None
        for i in range(k, n):
            if A[i][k]:
                if piv is None or _size(A[i][k]) < _size(A[piv][k]):
                    piv = i
        if piv is None:
            return 0 * A[0][0]
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        p = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            a = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (p * rowi[j] - a * rowk[j]) // prev
            rowi[k] = 0 * a
        prev = p
    return A[n - 1][n - 1] if sign > 0 else -A[n - 1][n - 1]


def _size(x):
    try:
        return x.bit_length()
    except AttributeError:
        return len(getattr(x, "terms", ())) or 0


def ff_rref(M: list):
    """Fraction-free Gauss-Jordan elimination.

    Returns (A, pivots, d): every pivot row t has d in column pivots[t] and 0 in
    the other pivot columns; d is the determinant of the pivot minor (up to sign)."""
    A = [list(row) for row in M]
    m = len(A)
    ncols = len(A[0]) if A else 0
    prev = 1
    rank = 0
    pivots = []
    for c in range(ncols):
        piv = None
        for i in range(rank, m):
            if A[i][c]:
                if piv is None or _size(A[i][c]) < _size(A[piv][c]):
                    piv = i
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        rowk = A[rank]
        p = rowk[c]
        for i in range(m):
            if i == rank:
                continue
            rowi = A[i]
            a = rowi[c]
            if a:
                for j in range(ncols):
                    rowi[j] = (p * rowi[j] - a * rowk[j]) // prev
            elif p != prev:
                for j in range(ncols):
                    if rowi[j]:
                        rowi[j] = (p * rowi[j]) // prev
        prev = p
        pivots.append(c)
        rank += 1
        if rank == m:
            break
    return A, pivots, prev


def to_prows(M, dim: int):
    """Sparse matrix (RepMatrix-like with .rows) or dense rows -> (mults, prows)."""
    rows = M.rows if hasattr(M, "rows") else {i: {j: v for j, v in enumerate(r) if v} for i, r in enumerate(M)}
    mults, prows = [], []
    for i in range(dim):
        mult, prow = clear_row(rows.get(i, {}))
        mults.append(mult)
        prows.append(prow)
    return mults, prows


def det_exact(M, dim: int) -> RationalFunction:
    """Exact determinant of a square matrix over Q(l, r)."""
    mults, prows = to_prows(M, dim)
    if any(not p for p in prows):
        return RationalFunction(0)
    pk = packing_for(prows, dim)
    ints = [[pk.pack(prow[j]) if j in prow else mpz(0) for j in range(dim)] for prow in prows]
    d = bareiss_det(ints)
    poly = pk.unpack(d)
    out = RationalFunction(poly)
    for mult in mults:
        out = out / mult
    return out


def rank_kernel(M, dim: int, ncols: int = None, start_bits: int = 64):
    """Rank and a kernel basis of a matrix over Q(r) (or Q(l, r)).

    The slot width starts small and doubles until every kernel vector passes
    the exact check; the rank of a specialization never exceeds the true rank,
    and each verified vector lowers the upper bound, so the result is certified.
    Kernel vectors come back as {col: BiLaurentPoly} with integer coefficients,
    content removed and a positive leading coefficient on the first coordinate."""
    ncols = dim if ncols is None else ncols
    mults, prows = to_prows(M, dim)
    prows = [p for p in prows if p]
    if not prows:
        return 0, [{j: BiLaurentPoly.const(1)} for j in range(ncols)]
    full = packing_for(prows, ncols)
    bits = min(start_bits, full.B)
    while True:
        pk = packing_for(prows, ncols, bits)
        result = _rank_kernel_packed(prows, ncols, pk)
        if result is not None:
            return result
        if bits >= full.B:
            raise ArithmeticError("kernel vector failed exact verification")
        bits = min(2 * bits, full.B)


def _rank_kernel_packed(prows, ncols, pk):
    ints = [[pk.pack(prow[j]) if j in prow else mpz(0) for j in range(ncols)] for prow in prows]
    A, pivots, d = ff_rref(ints)
    rank = len(pivots)
    pivset = set(pivots)
    basis = []
    try:
        for f in (j for j in range(ncols) if j not in pivset):
            vec = {f: pk.unpack(d)}
            for t, pc in enumerate(pivots):
                v = A[t][f]
                if v:
                    vec[pc] = pk.unpack(-v)
            if not vec[f]:
                return None
            vec = normalize_vector(vec)
            if not matvec_is_zero(prows, vec):
                return None
            basis.append(vec)
    except (OverflowError, ArithmeticError):
        return None
    return rank, basis


def normalize_vector(vec: dict) -> dict:
    """Divide by the polynomial gcd and integer content of the entries, shift to
    nonnegative exponents and make the first coordinate's leading coefficient positive."""
    vec = {j: p for j, p in vec.items() if p}
    if not vec:
        return vec
    g = None
    for p in vec.values():
        g = p.split()[3] if g is None else poly_gcd(g, p)
        if g.is_constant():
            break
    if not g.is_constant():
        vec = {j: p.exact_div(g) for j, p in vec.items()}
    cont = 0
    for p in vec.values():
        for c in p.terms.values():
            cont = igcd(cont, int(c))
    if vec[min(vec)].leading()[1] < 0:
        cont = -cont
    amin = min(min(a for a, _ in p.terms) for p in vec.values())
    bmin = min(min(b for _, b in p.terms) for p in vec.values())
    return {j: BiLaurentPoly._raw({(a - amin, b - bmin): int(c) // cont for (a, b), c in p.terms.items()})
            for j, p in vec.items()}


def matvec_is_zero(prows: list, vec: dict) -> bool:
    """Exact test that every integer-polynomial row annihilates vec."""
    vec = {j: (p if all(type(c) is int for c in p.terms.values()) else None) for j, p in vec.items()}
    if any(p is None for p in vec.values()):
        raise ValueError("matvec_is_zero expects integer polynomial vectors")
    H = 1
    rdeg = ldeg = 0
    vn = {j: _norm1(p) for j, p in vec.items()}
    vr = {j: max(b for _, b in p.terms) for j, p in vec.items()}
    vl = {j: max(a for a, _ in p.terms) for j, p in vec.items()}
    for prow in prows:
        s = sum(_norm1(p) * vn[j] for j, p in prow.items() if j in vec)
        H = max(H, s)
        for j, p in prow.items():
            if j in vec:
                rdeg = max(rdeg, max(b for _, b in p.terms) + vr[j])
                ldeg = max(ldeg, max(a for a, _ in p.terms) + vl[j])
    pk = Packing(H, rdeg, ldeg)
    xv = {j: pk.pack(p) for j, p in vec.items()}
    for prow in prows:
        s = mpz(0)
        for j, p in prow.items():
            if j in xv:
                s += pk.pack(p) * xv[j]
        if s:
            return False
    return True


def rank_over_field(rows: list) -> int:
    """Rank by plain Gaussian elimination over an exact field (RationalFunction or Fraction)."""
    A = [list(r) for r in rows]
    if not A:
        return 0
    rank = 0
    ncols = len(A[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = 1 / A[rank][c]
        for i in range(rank + 1, len(A)):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [x - f * y if y else x for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def nullspace_over_field(rows: list, ncols: int) -> list:
    """Basis of {x : rows * x = 0} over an exact field; vectors as lists."""
    A = [list(r) for r in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = 1 / A[rank][c]
        A[rank] = [x * inv for x in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y if y else x for x, y in zip(A[i], A[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for t, pc in enumerate(pivots):
            v[pc] = -A[t][f]
        out.append(v)
    return out
