"""Laurent polynomials in u over Q, and their normalized fractions.

UFrac exists because single affine Weyl translates of the character terms
carry denominators like (1 - u^-2) at q-order zero even though every fully
summed q-coefficient is an honest Laurent polynomial.  Fractions are kept in
a canonical form (monic polynomial denominator with no common factor), so
equality and the "is this polynomial?" assertion are structural checks.
"""

from __future__ import annotations

from fractions import Fraction


class ULaurent:
    """Finitely supported map {exponent: Fraction}, exponents may be negative."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c: dict[int, Fraction] = {}
        if coeffs:
            for e, v in coeffs.items():
                v = Fraction(v)
                if v:
                    self.c[e] = v

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def term(cls, coef, exp=0):
        return cls({exp: coef})

    def is_zero(self):
        return not self.c

    def is_one(self):
        return self.c == {0: Fraction(1)}

    def __eq__(self, other):
        return isinstance(other, ULaurent) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other):
        out = dict(self.c)
        for e, v in other.c.items():
            s = out.get(e, Fraction(0)) + v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = ULaurent()
        r.c = out
        return r

    def __neg__(self):
        r = ULaurent()
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out: dict[int, Fraction] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + v1 * v2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        r = ULaurent()
        r.c = out
        return r

    def scale(self, k):
        k = Fraction(k)
        r = ULaurent()
        if k:
            r.c = {e: v * k for e, v in self.c.items()}
        return r

    def shift(self, d):
        r = ULaurent()
        r.c = {e + d: v for e, v in self.c.items()}
        return r

    def min_exp(self):
        return min(self.c) if self.c else 0

    def max_exp(self):
        return max(self.c) if self.c else 0

    def subs_u_power(self, a):
        """u -> u^a (a nonzero integer); exact on Laurent polynomials."""
        r = ULaurent()
        r.c = {e * a: v for e, v in self.c.items()}
        return r

    def __repr__(self):
        if not self.c:
            return "0"
        bits = []
        for e in sorted(self.c):
            v = self.c[e]
            if e == 0:
                bits.append(f"{v}")
            else:
                bits.append(f"{v}*u^{e}")
        return " + ".join(bits)


def _poly_divmod(a: list, b: list):
    """Dense divmod over Q; lists are coefficients, low degree first."""
    a = list(a)
    db = len(b) - 1
    inv = 1 / b[-1]
    q = [Fraction(0)] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        coef = a[i] * inv
        if coef:
            q[i - db] = coef
            for j, bv in enumerate(b):
                a[i - db + j] -= coef * bv
    while a and not a[-1]:
        a.pop()
    return q, a


def _poly_gcd(a: list, b: list):
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        inv = 1 / a[-1]
        a = [v * inv for v in a]
    return a


def _to_poly(p: ULaurent):
    """(dense coefficient list, u-shift) with list[0] the u^shift coefficient."""
    if p.is_zero():
        return [], 0
    lo = p.min_exp()
    hi = p.max_exp()
    dense = [Fraction(0)] * (hi - lo + 1)
    for e, v in p.c.items():
        dense[e - lo] = v
    return dense, lo


def _from_poly(dense, shift):
    return ULaurent({i + shift: v for i, v in enumerate(dense) if v})


class UFrac:
    """Reduced ratio of Laurent polynomials in u.

    Canonical form: denominator is a monic ordinary polynomial (min exponent
    0) coprime to the numerator polynomial part; the u-shift lives in the
    numerator.  Equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: ULaurent, den: ULaurent = None, _normalized=False):
        if den is None:
            den = ULaurent.one()
        if den.is_zero():
            raise ZeroDivisionError("UFrac with zero denominator")
        if _normalized:
            self.num = num
            self.den = den
            return
        if num.is_zero():
            self.num = ULaurent.zero()
            self.den = ULaurent.one()
            return
        np, ns = _to_poly(num)
        dp, ds = _to_poly(den)
        g = _poly_gcd(list(np), list(dp))
        if len(g) > 1:
            np, _ = _poly_divmod(np, g)
            dp, _ = _poly_divmod(dp, g)
        # strip the pure-u factor from the denominator into the shift
        k = 0
        while not dp[k]:
            k += 1
        if k:
            dp = dp[k:]
            ds += k
        lead = dp[-1]
        dp = [v / lead for v in dp]
        np = [v / lead for v in np]
        self.num = _from_poly(np, ns - ds)
        self.den = _from_poly(dp, 0)

    @classmethod
    def zero(cls):
        return cls(ULaurent.zero())

    @classmethod
    def one(cls):
        return cls(ULaurent.one())

    @classmethod
    def from_rational(cls, x):
        return cls(ULaurent.term(Fraction(x)))

    @classmethod
    def from_u_term(cls, coef, exp):
        return cls(ULaurent.term(coef, exp))

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_one()

    def __eq__(self, other):
        if not isinstance(other, UFrac):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        return UFrac(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    def __neg__(self):
        r = UFrac.__new__(UFrac)
        r.num = -self.num
        r.den = self.den
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return UFrac(self.num * other.num, self.den * other.den)

    def invert(self):
        if self.is_zero():
            raise ZeroDivisionError("inverting zero UFrac")
        return UFrac(self.den, self.num)

    def __truediv__(self, other):
        return self * other.invert()

    def scale(self, k):
        k = Fraction(k)
        if not k:
            return UFrac.zero()
        r = UFrac.__new__(UFrac)
        r.num = self.num.scale(k)
        r.den = self.den
        return r

    def as_laurent(self) -> ULaurent:
        if not self.is_polynomial():
            raise ValueError(f"not polynomial in u: {self!r}")
        return self.num

    def as_rational(self) -> Fraction:
        lau = self.as_laurent()
        if lau.is_zero():
            return Fraction(0)
        if set(lau.c) != {0}:
            raise ValueError(f"not u-free: {self!r}")
        return lau.c[0]

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"
