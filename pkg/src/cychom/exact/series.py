"""Truncated formal series in q and t with UFrac (rational-in-u) coefficients.

q exponents live in [qmin, qmax] with qmin allowed negative (individual Weyl
translates transiently dip below zero); t exponents live in [0, tmax].  All
ring operations re-truncate, so a QTSeries is exact on every retained
exponent.
"""

from __future__ import annotations

from fractions import Fraction

from .ulaurent import UFrac, ULaurent


class QTSeries:
    __slots__ = ("qmin", "qmax", "tmax", "c")

    def __init__(self, qmax, tmax, qmin=0, coeffs=None):
        if qmax < qmin or tmax < 0:
            raise ValueError("bad truncation orders")
        self.qmin = qmin
        self.qmax = qmax
        self.tmax = tmax
        self.c: dict[tuple[int, int], UFrac] = {}
        if coeffs:
            for (qe, te), v in coeffs.items():
                self._set(qe, te, v)

    def _set(self, qe, te, v):
        if self.qmin <= qe <= self.qmax and 0 <= te <= self.tmax:
            if not v.is_zero():
                self.c[(qe, te)] = v

    @classmethod
    def zero(cls, qmax, tmax, qmin=0):
        return cls(qmax, tmax, qmin)

    @classmethod
    def one(cls, qmax, tmax, qmin=0):
        s = cls(qmax, tmax, qmin)
        s.c[(0, 0)] = UFrac.one()
        return s

    @classmethod
    def monomial(cls, qmax, tmax, qe, te, coef=1, ue=0, qmin=0):
        s = cls(qmax, tmax, qmin)
        v = UFrac.from_u_term(Fraction(coef), ue)
        s._set(qe, te, v)
        return s

    def copy_orders(self):
        return (self.qmax, self.tmax, self.qmin)

    def coefficient(self, qe, te) -> UFrac:
        return self.c.get((qe, te), UFrac.zero())

    def is_zero(self):
        return not self.c

    def __eq__(self, other):
        if not isinstance(other, QTSeries):
            return NotImplemented
        lo = max(self.qmin, other.qmin)
        keys = set(self.c) | set(other.c)
        for k in keys:
            if k[0] < lo:
                raise ValueError("comparing series on mismatched q ranges")
            if self.coefficient(*k) != other.coefficient(*k):
                return False
        return True

    def _merged_range(self, other):
        if self.qmax != other.qmax or self.tmax != other.tmax:
            raise ValueError("series truncation orders differ; caller aligns")
        return min(self.qmin, other.qmin)

    def __add__(self, other):
        qmin = self._merged_range(other)
        out = QTSeries(self.qmax, self.tmax, qmin)
        out.c = dict(self.c)
        for k, v in other.c.items():
            cur = out.c.get(k)
            s = v if cur is None else cur + v
            if s.is_zero():
                out.c.pop(k, None)
            else:
                out.c[k] = s
        return out

    def __neg__(self):
        out = QTSeries(self.qmax, self.tmax, self.qmin)
        out.c = {k: -v for k, v in self.c.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        qmin = self._merged_range(other)
        out = QTSeries(self.qmax, self.tmax, qmin)
        acc: dict[tuple[int, int], UFrac] = {}
        for (q1, t1), v1 in self.c.items():
            for (q2, t2), v2 in other.c.items():
                qe, te = q1 + q2, t1 + t2
                if qe > self.qmax or te > self.tmax or qe < qmin:
                    continue
                k = (qe, te)
                p = v1 * v2
                cur = acc.get(k)
                acc[k] = p if cur is None else cur + p
        out.c = {k: v for k, v in acc.items() if not v.is_zero()}
        return out

    def mul_term(self, coef, qe=0, te=0, ue=0):
        """Multiply by coef * q^qe * t^te * u^ue (exact, re-truncating)."""
        v0 = UFrac.from_u_term(Fraction(coef), ue)
        out = QTSeries(self.qmax, self.tmax, self.qmin)
        for (q1, t1), v in self.c.items():
            q2, t2 = q1 + qe, t1 + te
            if self.qmin <= q2 <= self.qmax and 0 <= t2 <= self.tmax:
                out.c[(q2, t2)] = v * v0
        return out

    def mul_ufrac(self, f: UFrac):
        out = QTSeries(self.qmax, self.tmax, self.qmin)
        if f.is_zero():
            return out
        out.c = {k: v * f for k, v in self.c.items()}
        return out

    def invert_unit(self):
        """Inverse of a series whose lowest term is a UFrac unit.

        Lowest term means the coefficient at (q0, 0) where q0 is the smallest
        q exponent present; everything above it is inverted by a geometric
        series, which terminates inside the truncation box.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverting zero series")
        q0 = min(q for q, _t in self.c)
        lead = self.c.get((q0, 0))
        if lead is None or lead.is_zero():
            raise ValueError("lowest term is not a unit (no (q0, t=0) coefficient)")
        if q0 > 0:
            raise ValueError("lowest term has positive q order; factor the monomial out first")
        # self = lead * q^q0 * (1 + r) with r strictly higher in (q, t)
        inv_lead = lead.invert()
        rest = QTSeries(self.qmax, self.tmax, 0)
        for (qe, te), v in self.c.items():
            if (qe, te) == (q0, 0):
                continue
            rest._set(qe - q0, te, v * inv_lead)
        out = QTSeries.one(self.qmax, self.tmax)
        power = QTSeries.one(self.qmax, self.tmax)
        neg = -rest
        while True:
            power = power * neg
            if power.is_zero():
                break
            out = out + power
        out = out.mul_ufrac(inv_lead)
        res = QTSeries(self.qmax, self.tmax, self.qmin)
        for (qe, te), v in out.c.items():
            res._set(qe - q0, te, v)
        return res

    def with_qmin(self, qmin):
        """Re-truncate onto [qmin, qmax]; raises if a nonzero term would drop."""
        out = QTSeries(self.qmax, self.tmax, qmin)
        for (qe, te), v in self.c.items():
            if qe < qmin:
                raise ValueError(f"nonzero coefficient at q^{qe} below requested qmin {qmin}")
            out.c[(qe, te)] = v
        return out

    def assert_polynomial_u(self):
        for k, v in sorted(self.c.items()):
            if not v.is_polynomial():
                raise AssertionError(f"coefficient at (q,t)={k} not polynomial in u: {v!r}")
        return self

    def t_slice(self, te):
        """Map q-exponent -> UFrac at fixed t power."""
        return {q: v for (q, t), v in self.c.items() if t == te}

    def subs_t_zero(self):
        out = QTSeries(self.qmax, self.tmax, self.qmin)
        out.c = {k: v for k, v in self.c.items() if k[1] == 0}
        return out

    def integer_coefficients(self):
        """As {(q, t): {u: int}}; raises if any coefficient is not integral."""
        out = {}
        for k, v in sorted(self.c.items()):
            lau = v.as_laurent()
            mono = {}
            for ue, coef in sorted(lau.c.items()):
                if coef.denominator != 1:
                    raise ValueError(f"non-integer coefficient {coef} at {k}")
                mono[ue] = int(coef)
            out[k] = mono
        return out

    def __repr__(self):
        bits = []
        for (qe, te) in sorted(self.c):
            bits.append(f"q^{qe} t^{te} * ({self.c[(qe, te)]!r})")
        return " + ".join(bits) if bits else "0"


def align(*series):
    """Common (qmax, tmax, qmin) view of several series."""
    qmax = series[0].qmax
    tmax = series[0].tmax
    if any(s.qmax != qmax or s.tmax != tmax for s in series):
        raise ValueError("cannot align series with different truncation orders")
    qmin = min(s.qmin for s in series)
    out = []
    for s in series:
        t = QTSeries(qmax, tmax, qmin)
        t.c = dict(s.c)
        out.append(t)
    return out
