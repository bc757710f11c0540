"""The fraction field Q(q, r) on top of LaurentPoly."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .laurent import ONE, ZERO, LaurentPoly, poly_gcd, Q, R


class RationalFn:
    """Reduced fraction num/den of Laurent polynomials.

    Canonical form: gcd(num, den) is a unit, integer contents are coprime,
    den has minimal exponents zero and a positive graded-lex leading
    coefficient.  Two canonical fractions are equal iff their parts are.
    """

    __slots__ = ("num", "den", "_h")

    def __init__(self, num=0, den=1):
        num, den = _lift(num), _lift(den)
        if isinstance(num, RationalFn) or isinstance(den, RationalFn):
            num = num if isinstance(num, RationalFn) else RationalFn._make(num, ONE)
            den = den if isinstance(den, RationalFn) else RationalFn._make(den, ONE)
            v = num / den
            self.num, self.den, self._h = v.num, v.den, None
            return
        n, d = _normalize(num, den)
        self.num, self.den, self._h = n, d, None

    @classmethod
    def _make(cls, num, den):
        obj = object.__new__(cls)
        obj.num, obj.den, obj._h = num, den, None
        return obj

    @classmethod
    def from_fraction(cls, x) -> "RationalFn":
        x = Fraction(x)
        return cls._make(LaurentPoly.const(x.numerator), LaurentPoly.const(x.denominator))

    # -- protocol ----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.num, self.den))
        return self._h

    def __neg__(self):
        return RationalFn._make(-self.num, self.den)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g == ONE:
            return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)
        d1 = self.den.exact_div(g)
        d2 = other.den.exact_div(g)
        return RationalFn(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RationalFn._make(ZERO, ONE)
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = poly_gcd(a, d)
        g2 = poly_gcd(c, b)
        if g1 != ONE:
            a, d = a.exact_div(g1), d.exact_div(g1)
        if g2 != ONE:
            c, b = c.exact_div(g2), b.exact_div(g2)
        return RationalFn._from_coprime(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFn._from_coprime(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFn._make(self.num ** e, self.den ** e)._renorm_units()

    @classmethod
    def _from_coprime(cls, num, den):
        """Canonicalize when num and den are known to share no non-unit."""
        return cls._make(num, den)._renorm_units()

    def _renorm_units(self):
        n, d = _units(self.num, self.den)
        return RationalFn._make(n, d)

    # -- specialisation ----------------------------------------------------
    def subs_r(self, eps: int, a: int) -> "RationalFn":
        """r -> eps*q^a on the reduced fraction."""
        d = self.den.subs_r(eps, a)
        if d.is_zero():
            raise ValueError("specialization pole")
        return RationalFn(self.num.subs_r(eps, a), d)

    def evaluate(self, q0, r0, p: int | None = None):
        d = self.den.evaluate(q0, r0, p)
        if d == 0:
            raise ValueError("evaluation pole")
        n = self.num.evaluate(q0, r0, p)
        if p is None:
            return n / d
        return n * pow(d, -1, p) % p

    # -- printing ----------------------------------------------------------
    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFn({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalFn":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def _lift(x):
    if isinstance(x, (LaurentPoly, RationalFn)):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    if isinstance(x, Fraction):
        return RationalFn._make(LaurentPoly.const(x.numerator), LaurentPoly.const(x.denominator))
    raise TypeError(f"cannot convert {type(x).__name__} to RationalFn")


def _coerce(x):
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFn._make(x, ONE)
    if isinstance(x, int):
        return RationalFn._make(LaurentPoly.const(x), ONE)
    if isinstance(x, Fraction):
        return RationalFn.from_fraction(x)
    return NotImplemented


def _units(num: LaurentPoly, den: LaurentPoly):
    """Fix monomial shift, integer content and sign."""
    if num.is_zero():
        return ZERO, ONE
    mq, mr = den.min_exponents()
    if mq or mr:
        den = den.shift(-mq, -mr)
        num = num.shift(-mq, -mr)
    g = gcd(num.content(), den.content())
    if den.leading()[1] < 0:
        g = -g
    if g != 1:
        num = LaurentPoly._raw({k: c // g for k, c in num.items()})
        den = LaurentPoly._raw({k: c // g for k, c in den.items()})
    return num, den


def _normalize(num: LaurentPoly, den: LaurentPoly):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return ZERO, ONE
    if not den.is_monomial() and not num.is_monomial():
        g = poly_gcd(num, den)
        if g != ONE:
            num, den = num.exact_div(g), den.exact_div(g)
    return _units(num, den)


def as_rational(x) -> RationalFn:
    v = _coerce(x)
    if v is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to RationalFn")
    return v


QR = RationalFn._make(Q, ONE)
RR = RationalFn._make(R, ONE)


def omega() -> RationalFn:
    """q - q^-1."""
    return RationalFn(Q - Q ** -1)


def delta_param() -> RationalFn:
    """The loop value (q+r)(qr-1) / (r(q^2-1))."""
    return RationalFn((Q + R) * (Q * R - 1), R * (Q * Q - 1))


def quantum_int_rf(m: int) -> RationalFn:
    from .laurent import quantum_int
    return RationalFn(quantum_int(m))


def substitute_r(v, eps: int, a: int) -> RationalFn:
    return as_rational(v).subs_r(eps, a)


def eval_numeric(v, q0, r0, p: int | None = None):
    """Exact value in Q (p None) or GF(p); q0, q0^2-1, r0 must be invertible."""
    if p is None:
        if Fraction(q0) == 0 or Fraction(r0) == 0 or Fraction(q0) ** 2 == 1:
            raise ValueError("q0, r0 and q0^2-1 must be nonzero")
    else:
        qq = Fraction(q0)
        qv = qq.numerator * pow(qq.denominator, -1, p) % p
        rr = Fraction(r0)
        rv = rr.numerator * pow(rr.denominator, -1, p) % p
        if qv == 0 or rv == 0 or (qv * qv - 1) % p == 0:
            raise ValueError("q0, r0 and q0^2-1 must be nonzero")
    return as_rational(v).evaluate(q0, r0, p)
