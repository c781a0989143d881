"""Exact arithmetic in Q(l, r) with Laurent monomials in both variables.

Polynomials are dicts {(a, b): coeff} meaning coeff * l^a * r^b, with int or
Fraction coefficients.  A RationalFunction keeps a Laurent numerator and a
true-polynomial denominator (primitive, integer, positive lex-leading
coefficient, no monomial factor), so equal values have equal representations.

gcds are computed by content extraction plus a primitive remainder sequence
in Z[r][l], i.e. l is the outer variable.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from typing import Callable, Iterable, Optional, Union

Number = Union[int, Fraction]


def _clean(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


# ---------------------------------------------------------------------------
# univariate integer polynomials in r: lists of ints, low degree first

def _utrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _uadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] += c
    return _utrim(out)


def _usub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for k, c in enumerate(b):
        out[k] -= c
    return _utrim(out)


def _umul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _utrim(out)


def _uscale(a, c):
    if c == 0:
        return []
    return [c * x for x in a]


def _ucontent(a):
    g = 0
    for x in a:
        g = igcd(g, x)
        if g == 1:
            break
    return g


def _uprimitive(a):
    if not a:
        return []
    g = _ucontent(a)
    if a[-1] < 0:
        g = -g
    return [x // g for x in a] if g != 1 else list(a)


def _udivexact(a, b):
    """Quotient a/b over Z, or None if b does not divide a with integer quotient."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    if len(a) < len(b):
        return None
    rem = list(a)
    lb = b[-1]
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        qc, rr = divmod(c, lb)
        if rr:
            return None
        q[k - db] = qc
        off = k - db
        for j, y in enumerate(b):
            rem[off + j] -= qc * y
    if any(rem[:db]):
        return None
    return _utrim(q)


def _uprem(a, b):
    """Pseudo-remainder of a by b."""
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    while rem and len(rem) - 1 >= db:
        c = rem[-1]
        shift = len(rem) - 1 - db
        rem = [lb * x for x in rem]
        for j, y in enumerate(b):
            rem[shift + j] -= c * y
        _utrim(rem)
    return rem


def _ueval(a, x):
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


def _uinterp(h, x):
    """Balanced base-x digits of h, low first."""
    out = []
    half = x // 2
    while h:
        d = h % x
        if d > half:
            d -= x
        out.append(d)
        h = (h - d) // x
    return out


def _ugcd_heuristic(a, b):
    """gcd by evaluation at a large integer; None if inconclusive."""
    xi = 2 * min(max(abs(c) for c in a), max(abs(c) for c in b)) + 29
    for _ in range(6):
        h = igcd(_ueval(a, xi), _ueval(b, xi))
        g = _uprimitive(_uinterp(h, xi))
        if g and _udivexact(a, g) is not None and _udivexact(b, g) is not None:
            return g
        xi = xi * 73794 // 27011
    return None


def _ugcd(a, b):
    if not a:
        return _uprimitive(b)
    if not b:
        return _uprimitive(a)
    c = igcd(_ucontent(a), _ucontent(b))
    a, b = _uprimitive(a), _uprimitive(b)
    if len(a) == 1 or len(b) == 1:
        return [c]
    if a == b:
        g = a
    else:
        g = _ugcd_heuristic(a, b)
    if g is None:
        if len(a) < len(b):
            a, b = b, a
        while b:
            rem = _uprem(a, b)
            a, b = b, _uprimitive(rem)
        g = a
    return [c * x for x in g] if c != 1 else g


# ---------------------------------------------------------------------------
# bivariate integer polynomials as {l_exp: upoly in r}

def _to_nested(terms):
    by_l = {}
    for (a, b), c in terms.items():
        row = by_l.setdefault(a, {})
        row[b] = c
    out = {}
    for a, row in by_l.items():
        coeffs = [0] * (max(row) + 1)
        for b, c in row.items():
            coeffs[b] = c
        out[a] = coeffs
    return out


def _from_nested(nested):
    terms = {}
    for a, coeffs in nested.items():
        for b, c in enumerate(coeffs):
            if c:
                terms[(a, b)] = c
    return terms


def _ncontent(A):
    return reduce(_ugcd, A.values(), [])


def _ndiv_u(A, u):
    """Divide every l-coefficient by the r-polynomial u (exactly)."""
    out = {}
    for a, c in A.items():
        q = _udivexact(c, u)
        if q is None:
            return None
        out[a] = q
    return out


def _nprem(A, B):
    dB = max(B)
    lB = B[dB]
    A = dict(A)
    while A and max(A) >= dB:
        dA = max(A)
        lA = A[dA]
        shift = dA - dB
        new = {a: _umul(lB, c) for a, c in A.items()}
        for b, c in B.items():
            key = b + shift
            v = _usub(new.get(key, []), _umul(lA, c))
            if v:
                new[key] = v
            else:
                new.pop(key, None)
        A = new
    return A


def _nprimitive(A):
    if not A:
        return {}
    cont = _ncontent(A)
    lead = A[max(A)]
    if lead[-1] < 0:
        cont = [-x for x in cont]
    if cont == [1]:
        return A
    return _ndiv_u(A, cont)


def _ngcd(A, B):
    """Primitive gcd (positive leading coefficient) of two nonzero polynomials."""
    cA, cB = _ncontent(A), _ncontent(B)
    c = _ugcd(cA, cB)
    if max(A) == 0 or max(B) == 0:
        return {0: c}
    A, B = _ndiv_u(A, cA), _ndiv_u(B, cB)
    g = _ngcd_kronecker(A, B)
    if g is not None:
        return {a: _umul(c, v) for a, v in g.items()}
    if max(A) < max(B):
        A, B = B, A
    while B:
        if max(B) == 0:
            return {0: c}
        R = _nprem(A, B)
        A, B = B, _nprimitive(R)
    A = _nprimitive(A)
    return {a: _umul(c, v) for a, v in A.items()}


def _kron_pack(A, D):
    out = [0] * (max(A) * D + max(len(c) for c in A.values()))
    for a, c in A.items():
        for b, x in enumerate(c):
            out[a * D + b] += x
    return _utrim(out)


def _kron_unpack(u, D):
    out = {}
    for k, x in enumerate(u):
        if x:
            row = out.setdefault(k // D, [])
            row.extend([0] * (k % D + 1 - len(row)))
            row[k % D] = x
    return out


def _ngcd_kronecker(A, B):
    """Primitive gcd of primitive A, B via l -> r^D, or None.

    A candidate that divides both inputs is the gcd: the image of the true gcd
    divides the univariate gcd, and packing is injective on exponents."""
    rdeg = max(len(c) for P in (A, B) for c in P.values())
    for D in (rdeg, rdeg + 1, 2 * rdeg + 3):
        u = _ugcd(_kron_pack(A, D), _kron_pack(B, D))
        if len(u) > D * (min(max(A), max(B)) + 1):
            continue
        g = _nprimitive(_kron_unpack(u, D))
        if g and _ndivexact(A, g) is not None and _ndivexact(B, g) is not None:
            return g
    return None


def _ndivexact(A, B):
    """A/B in Z[l, r] or None when B does not divide A."""
    if not A:
        return {}
    dB = max(B)
    lB = B[dB]
    A = dict(A)
    Q = {}
    while A:
        dA = max(A)
        if dA < dB:
            return None
        qc = _udivexact(A[dA], lB)
        if qc is None:
            return None
        shift = dA - dB
        Q[shift] = qc
        for b, c in B.items():
            key = b + shift
            v = _usub(A.get(key, []), _umul(qc, c))
            if v:
                A[key] = v
            else:
                A.pop(key, None)
    return Q


# ---------------------------------------------------------------------------

class BiLaurentPoly:
    """Laurent polynomial in l and r with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for k, c in terms.items():
                c = _clean(c) if isinstance(c, Fraction) else c
                if c:
                    t[(int(k[0]), int(k[1]))] = c
        self.terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c):
        c = _clean(Fraction(c)) if not isinstance(c, int) else c
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, c=1, a=0, b=0):
        c = _clean(c)
        return cls._raw({(a, b): c} if c else {})

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def depends_on_l(self):
        return any(a for a, _ in self.terms)

    def __eq__(self, other):
        if isinstance(other, BiLaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __neg__(self):
        return BiLaurentPoly._raw({k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, BiLaurentPoly):
            other = BiLaurentPoly.const(other)
        if len(self.terms) < len(other.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        t = dict(big)
        for k, c in small.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = _clean(v)
            else:
                t.pop(k, None)
        return BiLaurentPoly._raw(t)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, BiLaurentPoly):
            other = BiLaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return BiLaurentPoly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiLaurentPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            if not other:
                return BiLaurentPoly._raw({})
            return BiLaurentPoly._raw({k: _clean(c * other) for k, c in self.terms.items()})
        t = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                t[k] = t.get(k, 0) + c1 * c2
        return BiLaurentPoly._raw({k: _clean(c) for k, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            ((a, b), c), = self.terms.items()
            return BiLaurentPoly.monomial(Fraction(1) / Fraction(c) ** (-e), a * e, b * e)
        out = BiLaurentPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def shift(self, a, b):
        if a == 0 and b == 0:
            return self
        return BiLaurentPoly._raw({(x + a, y + b): c for (x, y), c in self.terms.items()})

    def min_exponents(self):
        return (min(a for a, _ in self.terms), min(b for _, b in self.terms))

    def max_exponents(self):
        return (max(a for a, _ in self.terms), max(b for _, b in self.terms))

    def leading(self):
        k = max(self.terms)
        return k, self.terms[k]

    def split(self):
        """Return (c, a, b, P) with self = c*l^a*r^b*P, P a primitive integer polynomial
        with positive lex-leading coefficient and no monomial factor."""
        if not self.terms:
            raise ValueError("split of zero")
        a, b = self.min_exponents()
        den = 1
        for c in self.terms.values():
            if type(c) is Fraction:
                den = den * c.denominator // igcd(den, c.denominator)
        ints = {(x - a, y - b): int(c * den) for (x, y), c in self.terms.items()}
        g = 0
        for c in ints.values():
            g = igcd(g, c)
            if g == 1:
                break
        if ints[max(ints)] < 0:
            g = -g
        P = {k: c // g for k, c in ints.items()}
        return _clean(Fraction(g, den)), a, b, BiLaurentPoly._raw(P)

    def evaluate(self, l=None, r=None):
        """Evaluate at numbers l and r (Fractions or ints)."""
        total = Fraction(0)
        lp, rp = {}, {}
        for (a, b), c in self.terms.items():
            if a not in lp:
                lp[a] = Fraction(l) ** a
            if b not in rp:
                rp[b] = Fraction(r) ** b
            total += c * lp[a] * rp[b]
        return total

    def subs_l(self, coeff, power):
        """Substitute l := coeff * r^power."""
        t = {}
        cpow = {}
        for (a, b), c in self.terms.items():
            if a not in cpow:
                cpow[a] = Fraction(coeff) ** a
            k = (0, b + power * a)
            t[k] = t.get(k, 0) + c * cpow[a]
        return BiLaurentPoly._raw({k: _clean(c) for k, c in t.items() if c})

    def subs_r(self, value):
        """Substitute r := value, leaving a polynomial in l."""
        t = {}
        rp = {}
        value = Fraction(value)
        for (a, b), c in self.terms.items():
            if b not in rp:
                rp[b] = value ** b
            k = (a, 0)
            t[k] = t.get(k, 0) + c * rp[b]
        return BiLaurentPoly._raw({k: _clean(c) for k, c in t.items() if c})

    def exact_div(self, other: "BiLaurentPoly") -> Optional["BiLaurentPoly"]:
        """self/other if it is a Laurent polynomial, else None."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return self
        c1, a1, b1, P1 = self.split()
        c2, a2, b2, P2 = other.split()
        if P2.is_constant():
            q = P1
        else:
            Q = _ndivexact(_to_nested(P1.terms), _to_nested(P2.terms))
            if Q is None:
                return None
            q = BiLaurentPoly._raw(_from_nested(Q))
        if c1 != c2:
            q = q * _clean(Fraction(c1) / Fraction(c2))
        return q.shift(a1 - a2, b1 - b2)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"BiLaurentPoly({format_poly(self)!r})"


def poly_gcd(p: BiLaurentPoly, q: BiLaurentPoly) -> BiLaurentPoly:
    """Primitive gcd of two Laurent polynomials, ignoring monomial factors (units)."""
    if not p:
        return q.split()[3] if q else BiLaurentPoly.const(1)
    if not q:
        return p.split()[3]
    P, Q = p.split()[3], q.split()[3]
    if P.is_constant() or Q.is_constant():
        return BiLaurentPoly.const(1)
    if P == Q:
        return P
    G = _ngcd(_to_nested(P.terms), _to_nested(Q.terms))
    return BiLaurentPoly._raw(_from_nested(G))


_ONE = BiLaurentPoly._raw({(0, 0): 1})


class RationalFunction:
    """Element of Q(l, r) in canonical form num/den."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, _canonical=False):
        if not isinstance(num, BiLaurentPoly):
            num = BiLaurentPoly.const(num)
        if den is None:
            den = _ONE
        elif not isinstance(den, BiLaurentPoly):
            den = BiLaurentPoly.const(den)
        self._hash = None
        if _canonical:
            self.num, self.den = num, den
            return
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = num, _ONE
            return
        if den.is_monomial():
            ((a, b), c), = den.terms.items()
            inv = Fraction(1) / Fraction(c)
            self.num = (num * _clean(inv)).shift(-a, -b)
            self.den = _ONE
            return
        cn, an, bn, N = num.split()
        cd, ad, bd, D = den.split()
        if not N.is_constant():
            g = poly_gcd(N, D)
            if not g.is_constant():
                N = N.exact_div(g)
                D = D.exact_div(g)
        # D is primitive with positive lead after dividing by a primitive g
        if D.is_constant():
            cd = Fraction(cd) * D.terms[(0, 0)]
            D = _ONE
        self.num = (N * _clean(Fraction(cn) / Fraction(cd))).shift(an - ad, bn - bd)
        self.den = D

    @classmethod
    def _lift(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, BiLaurentPoly):
            return cls(x, _ONE, _canonical=True)
        if isinstance(x, (int, Fraction)):
            return cls(BiLaurentPoly.const(x), _ONE, _canonical=True)
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")

    # -- predicates
    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den == _ONE

    def is_constant(self):
        return self.den == _ONE and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self.num.terms.get((0, 0), 0))

    def depends_on_l(self):
        return self.num.depends_on_l() or self.den.depends_on_l()

    # -- arithmetic
    def __neg__(self):
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __add__(self, other):
        try:
            other = RationalFunction._lift(other)
        except TypeError:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den is _ONE or self.den == _ONE:
                return RationalFunction(self.num + other.num, _ONE, _canonical=True)
            return RationalFunction(self.num + other.num, self.den)
        if self.den == _ONE:
            return RationalFunction(self.num * other.den + other.num, other.den)
        if other.den == _ONE:
            return RationalFunction(self.num + other.num * self.den, self.den)
        g = poly_gcd(self.den, other.den)
        if g.is_constant():
            return RationalFunction(self.num * other.den + other.num * self.den,
                                    self.den * other.den)
        d1 = self.den.exact_div(g)
        d2 = other.den.exact_div(g)
        return RationalFunction(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = RationalFunction._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RationalFunction._lift(other) - self

    def __mul__(self, other):
        try:
            other = RationalFunction._lift(other)
        except TypeError:
            return NotImplemented
        if not self.num or not other.num:
            return RationalFunction(0)
        if self.den == _ONE and other.den == _ONE:
            return RationalFunction(self.num * other.num, _ONE, _canonical=True)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("division by zero in Q(l,r)")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = RationalFunction._lift(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if self.den == _ONE:
            return RationalFunction(self.num ** e, _ONE, _canonical=True)
        # num and den coprime, so their powers are coprime too
        return RationalFunction(self.num ** e, self.den ** e, _canonical=True)

    def __eq__(self, other):
        try:
            other = RationalFunction._lift(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- evaluation
    def evaluate(self, l=None, r=None) -> Fraction:
        d = self.den.evaluate(l, r)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes: {_vanishing_factor(self.den, l, r)}")
        return self.num.evaluate(l, r) / d

    def __str__(self):
        if self.den == _ONE:
            return format_poly(self.num)
        n = format_poly(self.num)
        if len(self.num.terms) > 1:
            n = f"({n})"
        return f"{n}/({format_poly(self.den)})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


def _vanishing_factor(den: BiLaurentPoly, l, r) -> str:
    fam = default_family(8)
    for f in fam:
        if den.exact_div(f) is not None:
            try:
                if f.evaluate(l if l is not None else 1, r) == 0:
                    return format_poly(f)
            except ZeroDivisionError:
                pass
    return format_poly(den)


L = RationalFunction(BiLaurentPoly.monomial(1, 1, 0), _ONE, _canonical=True)
R = RationalFunction(BiLaurentPoly.monomial(1, 0, 1), _ONE, _canonical=True)
ONE = RationalFunction(1)
ZERO = RationalFunction(0)
M = 1 / R - R


def delta() -> RationalFunction:
    """Loop value 1 - (l - 1/l)/m."""
    return 1 - (L - 1 / L) / M


def as_rf(x) -> RationalFunction:
    return RationalFunction._lift(x)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LValue:
    """l := coeff * r^power."""

    coeff: Fraction
    power: int

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "power", int(self.power))
        if self.coeff == 0:
            raise ValueError("LValue coefficient must be nonzero")

    def as_rf(self) -> RationalFunction:
        return RationalFunction(BiLaurentPoly.monomial(_clean(self.coeff), 0, self.power),
                                _ONE, _canonical=True)

    def __str__(self):
        return format_poly(BiLaurentPoly.monomial(_clean(self.coeff), 0, self.power))

    @classmethod
    def parse(cls, text: str) -> "LValue":
        x = parse(text)
        if x.depends_on_l() or x.den != _ONE or not x.num.is_monomial():
            raise ValueError(f"not of the form c*r^k: {text!r}")
        ((_, b), c), = x.num.terms.items()
        return cls(Fraction(c), b)

    def value_at(self, r) -> Fraction:
        return self.coeff * Fraction(r) ** self.power


def specialize(x, l=None, r=None) -> RationalFunction:
    """Substitute l (an LValue or a number) and/or r (a number) into x."""
    x = as_rf(x)
    if isinstance(l, (str,)):
        l = LValue.parse(l)
    if l is not None and not isinstance(l, LValue):
        if r is None:
            raise ValueError("a numeric l needs a numeric r")
        return RationalFunction(x.evaluate(Fraction(l), Fraction(r)))
    num, den = x.num, x.den
    if isinstance(l, LValue):
        num = num.subs_l(l.coeff, l.power)
        den = den.subs_l(l.coeff, l.power)
        if not den:
            raise ZeroDivisionError(
                f"denominator vanishes at l = {l}: factor {_vanishing_factor_l(x.den, l)}")
    if r is not None:
        r = Fraction(r)
        if r == 0 and (min((b for _, b in list(num.terms) + list(den.terms)), default=0) < 0):
            raise ZeroDivisionError("denominator vanishes at r = 0")
        num = num.subs_r(r)
        dv = den.subs_r(r)
        if not dv:
            raise ZeroDivisionError(
                f"denominator vanishes at r = {r}: factor {_vanishing_factor(x.den, 1, r)}")
        den = dv
    return RationalFunction(num, den)


def _vanishing_factor_l(den, lv):
    for f in default_family(8):
        if den.exact_div(f) is not None and not f.subs_l(lv.coeff, lv.power):
            return format_poly(f)
    return format_poly(den)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactoredForm:
    """unit * prod(f^k) * cofactor; complete when cofactor == 1."""

    unit: RationalFunction
    factors: tuple
    cofactor: RationalFunction = ONE

    @property
    def complete(self) -> bool:
        return self.cofactor == ONE

    def expand(self) -> RationalFunction:
        out = self.unit * self.cofactor
        for f, k in self.factors:
            out = out * as_rf(f) ** k
        return out

    def multiplicity(self, f) -> int:
        if isinstance(f, str):
            f = parse(f).num
        return dict(self.factors).get(f, 0)

    def l_roots(self) -> set:
        """LValues at which a positive-multiplicity factor linear in l vanishes."""
        roots = set()
        for f, k in self.factors:
            if k <= 0:
                continue
            t = f.terms
            lt = [(key, c) for key, c in t.items() if key[0] == 1]
            ct = [(key, c) for key, c in t.items() if key[0] == 0]
            if len(lt) != 1 or len(ct) != 1 or len(t) != 2:
                continue
            (_, b1), c1 = lt[0]
            (_, b0), c0 = ct[0]
            roots.add(LValue(-Fraction(c0) / Fraction(c1), b0 - b1))
        return roots

    def __str__(self):
        parts = [f"({self.unit})"] if self.unit != ONE else []
        for f, k in self.factors:
            parts.append(f"({f})" + (f"^{k}" if k != 1 else ""))
        if not self.complete:
            parts.append(f"[{self.cofactor}]")
        return " * ".join(parts) if parts else "1"


def default_family(n: int) -> list:
    """Candidate factors l*r^k -/+ 1, l -/+ r^k (|k| <= 4n) and r^k -/+ 1 (k <= 2n),
    deduplicated up to units and ordered with r-only factors by decreasing degree."""
    seen = {}
    for k in range(-4 * n, 4 * n + 1):
        for f in (
            BiLaurentPoly({(1, k): 1, (0, 0): -1}),
            BiLaurentPoly({(1, k): 1, (0, 0): 1}),
            BiLaurentPoly({(1, 0): 1, (0, k): -1}),
            BiLaurentPoly({(1, 0): 1, (0, k): 1}),
        ):
            if not f:
                continue
            P = f.split()[3]
            seen.setdefault(P, None)
    lin = sorted(seen, key=lambda p: sorted(p.terms.items(), reverse=True))
    ronly = []
    for k in range(2 * n, 0, -1):
        for s in (-1, 1):
            ronly.append(BiLaurentPoly({(0, k): 1, (0, 0): s}))
    return lin + ronly


def _strip(P: BiLaurentPoly, family) -> tuple:
    found = []
    for f in family:
        k = 0
        while not P.is_monomial():
            q = P.exact_div(f)
            if q is None:
                break
            P = q
            k += 1
        if k:
            found.append((f, k))
    return P, found


def trial_factor(x, family: Optional[Iterable] = None, n: int = 8) -> FactoredForm:
    """Divide out members of the candidate family from numerator and denominator."""
    x = as_rf(x)
    fam = list(family) if family is not None else default_family(n)
    fam = [f.split()[3] if isinstance(f, BiLaurentPoly) else parse(f).num.split()[3] for f in fam]
    if not x:
        return FactoredForm(ZERO, ())
    num_rest, num_f = _strip(x.num, fam)
    den_rest, den_f = _strip(x.den, fam)
    mult = {}
    for f, k in num_f:
        mult[f] = mult.get(f, 0) + k
    for f, k in den_f:
        mult[f] = mult.get(f, 0) - k
    factors = tuple((f, k) for f, k in mult.items() if k)
    cn, an, bn, N = num_rest.split()
    cd, ad, bd, D = den_rest.split()
    unit = RationalFunction(BiLaurentPoly.monomial(_clean(Fraction(cn) / Fraction(cd)),
                                                   an - ad, bn - bd))
    cof = RationalFunction(N, D)
    return FactoredForm(unit, factors, cof)


# ---------------------------------------------------------------------------

def _rand_rational(rng: random.Random, bound: int = 10 ** 4) -> Fraction:
    while True:
        p = rng.randint(-bound, bound)
        q = rng.randint(1, bound)
        if p:
            return Fraction(p, q)


def admissible_r(r: Fraction, n: int) -> bool:
    """r^(2k) != 1 for k <= n and r^(2k) != -1 for k <= n-1."""
    if r == 0:
        return False
    for k in range(1, n + 1):
        if r ** (2 * k) == 1:
            return False
        if k <= n - 1 and r ** (2 * k) == -1:
            return False
    return True


def random_points(count: int, seed: int, n: int = 8, bound: int = 10 ** 4):
    """Deterministic admissible rational points (l, r)."""
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        l0 = _rand_rational(rng, bound)
        r0 = _rand_rational(rng, bound)
        if admissible_r(r0, n):
            pts.append((l0, r0))
    return pts


def _value_at(x, l0, r0):
    if callable(x) and not isinstance(x, RationalFunction):
        return x(l0, r0)
    return as_rf(x).evaluate(l0, r0)


def probabilistic_identity(x, y, points: int = 10, seed: int = 0, n: int = 8) -> bool:
    """Compare x and y at random admissible points.  Either side may be a
    RationalFunction or a callable (l, r) -> Fraction."""
    if points < 1:
        raise ValueError("points must be >= 1")
    rng = random.Random(seed)
    done = 0
    while done < points:
        (l0, r0), = random_points(1, rng.getrandbits(64), n)
        try:
            a = _value_at(x, l0, r0)
            b = _value_at(y, l0, r0)
        except ZeroDivisionError:
            continue
        if a != b:
            return False
        done += 1
    return True


# ---------------------------------------------------------------------------
# string grammar

def _fmt_coeff(c) -> str:
    return str(c)


def _fmt_mono(a, b) -> str:
    parts = []
    if a:
        parts.append("l" if a == 1 else f"l^{a}")
    if b:
        parts.append("r" if b == 1 else f"r^{b}")
    return "*".join(parts)


def format_poly(p: BiLaurentPoly) -> str:
    if not p.terms:
        return "0"
    out = []
    for (a, b), c in sorted(p.terms.items(), reverse=True):
        mono = _fmt_mono(a, b)
        mag = abs(c)
        if not mono:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(mag)}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[lrm+\-*/^()]))")


def _tokenize(text):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        toks.append(int(mt.group(1)) if mt.group(1) else ("^" if mt.group(2) == "**" else mt.group(2)))
        pos = mt.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.k = 0
        self.text = text

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else None

    def take(self, expected=None):
        t = self.peek()
        if t is None or (expected is not None and t != expected):
            raise ValueError(f"cannot parse {self.text!r}: expected {expected!r}, got {t!r}")
        self.k += 1
        return t

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            w = self.unary()
            v = v * w if op == "*" else v / w
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            while self.peek() in ("-", "+"):
                if self.take() == "-":
                    sign = -sign
            if self.peek() == "(":
                self.take()
                e = self.expr()
                self.take(")")
                e = e.constant_value()
                if e.denominator != 1:
                    raise ValueError("non-integer exponent")
                e = int(e)
            else:
                e = self.take()
                if not isinstance(e, int):
                    raise ValueError(f"bad exponent in {self.text!r}")
            return base ** (sign * e)
        return base

    def atom(self):
        t = self.take()
        if isinstance(t, int):
            return RationalFunction(t)
        if t == "l":
            return L
        if t == "r":
            return R
        if t == "m":
            return M
        if t == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ValueError(f"unexpected token {t!r} in {self.text!r}")


def parse(text: str) -> RationalFunction:
    """Parse an expression in l, r (and m = 1/r - r) with + - * / ^ and parentheses."""
    p = _Parser(text)
    v = p.expr()
    if p.peek() is not None:
        raise ValueError(f"trailing input in {text!r}")
    return v
