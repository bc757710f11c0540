"""Factored values: unit monomial times a product of atom powers.

Internally every value is kept over a canonical alphabet of
``RMinus(eps, a) = r - eps*q^a``, cyclotomic polynomials ``Phi_m(q)`` and
residual ``Generic`` polynomials.  Quantum integers and ``q^2 - 1`` are
display groupings: ``[k]`` is the product of ``Phi_e`` over ``e | 2k, e >= 3``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .laurent import ONE, LaurentPoly, _b_content, _trim, _u_divexact, parse_poly, quantum_int
from .rational import RationalFn, as_rational


# ---------------------------------------------------------------------------
# atoms


@dataclass(frozen=True)
class RMinus:
    eps: int
    a: int

    def poly(self) -> LaurentPoly:
        return LaurentPoly({(0, 1): 1, (self.a, 0): -self.eps})

    def label(self) -> str:
        sign = "-" if self.eps == 1 else "+"
        if self.a == 0:
            return f"r{sign}1"
        return f"r{sign}q" + ("" if self.a == 1 else f"^{self.a}")


@dataclass(frozen=True)
class Cyclotomic:
    m: int

    def poly(self) -> LaurentPoly:
        return LaurentPoly({(i, 0): c for i, c in enumerate(cyclotomic(self.m))})

    def label(self) -> str:
        return self.poly().to_string(compact=True)


@dataclass(frozen=True)
class QuantumInt:
    k: int

    def poly(self) -> LaurentPoly:
        return quantum_int(self.k)

    def label(self) -> str:
        return f"[{self.k}]"


@dataclass(frozen=True)
class QSquareMinusOne:
    def poly(self) -> LaurentPoly:
        return LaurentPoly({(2, 0): 1, (0, 0): -1})

    def label(self) -> str:
        return "q^2-1"


@dataclass(frozen=True)
class Generic:
    p: LaurentPoly

    def poly(self) -> LaurentPoly:
        return self.p

    def label(self) -> str:
        return self.p.to_string(compact=True)


def _atom_key(atom):
    if isinstance(atom, QuantumInt):
        return (0, atom.k, 0, "")
    if isinstance(atom, RMinus):
        return (1, atom.a, atom.eps, "")
    if isinstance(atom, Cyclotomic):
        return (2, atom.m, 0, "")
    if isinstance(atom, Generic):
        return (3, 0, 0, atom.label())
    return (4, 0, 0, "")


_RMINUS_RE = re.compile(r"^r([+-])(?:1|q(?:\^(-?\d+))?)$")


def parse_atom(label: str):
    if label == "q^2-1":
        return QSquareMinusOne()
    m = re.fullmatch(r"\[(\d+)\]", label)
    if m:
        return QuantumInt(int(m.group(1)))
    m = _RMINUS_RE.match(label)
    if m:
        eps = 1 if m.group(1) == "-" else -1
        if label.endswith("1") and "q" not in label:
            return RMinus(eps, 0)
        return RMinus(eps, int(m.group(2)) if m.group(2) else 1)
    return Generic(parse_poly(label))


# ---------------------------------------------------------------------------
# cyclotomic polynomials over Z, dense lists


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> tuple:
    p = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            p = _u_divexact(p, list(cyclotomic(d)))
    return tuple(p)


def _divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def quantum_cyclotomics(k: int) -> list[int]:
    """Indices e with [k] = prod Phi_e."""
    return [e for e in _divisors(2 * k) if e >= 3]


def _binomial_cyclotomics(d: int, s: int) -> list[int]:
    """q^d - s for d >= 1, s = +-1, as a list of cyclotomic indices."""
    if s == 1:
        return _divisors(d)
    return [e for e in _divisors(2 * d) if d % e]


# ---------------------------------------------------------------------------
# factoring a single Laurent polynomial


def _factor_univariate(row: list, atoms: Counter) -> None:
    """Strip cyclotomic factors from a primitive positive-lead Z[q] list
    with nonzero constant term; any residual becomes a Generic atom."""
    cur = _trim(list(row))
    if len(cur) <= 1:
        return
    m = 1
    limit = 2 * (len(cur) - 1) + 2
    while m <= limit and len(cur) > 1:
        phi = list(cyclotomic(m))
        while len(phi) <= len(cur):
            qt = _u_divexact(cur, phi)
            if qt is None:
                break
            atoms[Cyclotomic(m)] += 1
            cur = qt
        m += 1
    if len(cur) > 1:
        atoms[Generic(LaurentPoly({(i, 0): c for i, c in enumerate(cur)}))] += 1


def factor_poly(P: LaurentPoly):
    """Return (coeff, e_q, e_r, Counter atoms) with P = coeff q^e_q r^e_r prod atoms."""
    if P.is_zero():
        raise ValueError("cannot factor zero")
    atoms: Counter = Counter()
    mq, mr = P.min_exponents()
    cont = P.content()
    if P.leading()[1] < 0:
        cont = -cont
    coeff = cont
    cur = LaurentPoly._raw({(x - mq, y - mr): c // cont for (x, y), c in P.items()})
    if cur.is_constant():
        return Fraction(coeff * cur.constant_value()), mq, mr, atoms
    rows, _, _ = cur._dense()
    qcont = _b_content(rows)
    if len(qcont) > 1:
        _factor_univariate(qcont, atoms)
        qc = LaurentPoly({(i, 0): c for i, c in enumerate(qcont)})
        cur = cur.exact_div(qc)
    if cur.degree_r() > 0:
        span = cur.span_q()
        for a in range(-span, span + 1):
            for eps in (1, -1):
                while cur.degree_r() > 0 and cur.subs_r(eps, a).is_zero():
                    atom = RMinus(eps, a)
                    cur = cur.exact_div(atom.poly())
                    atoms[atom] += 1
        sq, sr = cur.min_exponents()
        mq += sq
        mr += sr
        cur = cur.shift(-sq, -sr)
        if not cur.is_constant():
            n = cur.normal()
            k, c = cur.leading()
            coeff *= c // n.leading()[1]
            atoms[Generic(n)] += 1
        else:
            coeff *= cur.constant_value()
    else:
        coeff *= cur.constant_value()
    return Fraction(coeff), mq, mr, atoms


# ---------------------------------------------------------------------------


class FactoredValue:
    """unit * prod atom^exp, with unit = coeff * q^e_q * r^e_r.

    A zero value is represented by coeff == 0 and no atoms.
    """

    __slots__ = ("coeff", "e_q", "e_r", "_atoms")

    def __init__(self, coeff=1, e_q: int = 0, e_r: int = 0, factors=()):
        self.coeff = Fraction(coeff)
        self.e_q = int(e_q)
        self.e_r = int(e_r)
        atoms: Counter = Counter()
        items = factors.items() if isinstance(factors, dict) else factors
        for atom, exp in items:
            if not exp:
                continue
            for canon, mult, (c, x, y) in _canonical(atom):
                atoms[canon] += mult * exp
                self.coeff *= Fraction(c) ** exp
                self.e_q += x * exp
                self.e_r += y * exp
        self._atoms = {a: e for a, e in atoms.items() if e}
        if self.coeff == 0:
            self._atoms = {}

    @classmethod
    def _raw(cls, coeff, e_q, e_r, atoms):
        obj = object.__new__(cls)
        obj.coeff, obj.e_q, obj.e_r = Fraction(coeff), e_q, e_r
        obj._atoms = {a: e for a, e in atoms.items() if e}
        return obj

    @classmethod
    def zero(cls) -> "FactoredValue":
        return cls._raw(0, 0, 0, {})

    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def atoms(self) -> dict:
        """Canonical atoms (RMinus, Cyclotomic, Generic) with exponents."""
        return dict(self._atoms)

    def rminus(self) -> dict:
        return {a: e for a, e in self._atoms.items() if isinstance(a, RMinus)}

    def unit(self) -> tuple:
        return (self.coeff, self.e_q, self.e_r)

    def is_unit(self) -> bool:
        return not self._atoms and self.coeff != 0

    # -- arithmetic --------------------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, FactoredValue):
            other = FactoredValue(other)
        if self.is_zero() or other.is_zero():
            return FactoredValue.zero()
        atoms = Counter(self._atoms)
        for a, e in other._atoms.items():
            atoms[a] += e
        return FactoredValue._raw(self.coeff * other.coeff, self.e_q + other.e_q,
                                  self.e_r + other.e_r, atoms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if self.is_zero():
            if k <= 0:
                raise ZeroDivisionError("power of zero")
            return self
        return FactoredValue._raw(self.coeff ** k, self.e_q * k, self.e_r * k,
                                  {a: e * k for a, e in self._atoms.items()})

    def inverse(self):
        return self ** -1

    def __truediv__(self, other):
        if not isinstance(other, FactoredValue):
            other = FactoredValue(other)
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, FactoredValue):
            return NotImplemented
        if self.unit() != other.unit():
            return False
        a = {k: v for k, v in self._atoms.items() if not isinstance(k, Generic)}
        b = {k: v for k, v in other._atoms.items() if not isinstance(k, Generic)}
        if a != b:
            return False
        ga = {k: v for k, v in self._atoms.items() if isinstance(k, Generic)}
        gb = {k: v for k, v in other._atoms.items() if isinstance(k, Generic)}
        if ga == gb:
            return True
        return _generic_value(ga) == _generic_value(gb)

    def __hash__(self):
        return hash((self.unit(), frozenset((k, v) for k, v in self._atoms.items()
                                            if not isinstance(k, Generic))))

    # -- conversion --------------------------------------------------------
    def expand(self) -> RationalFn:
        if self.is_zero():
            return RationalFn(0)
        num = LaurentPoly.monomial(self.coeff.numerator, self.e_q, self.e_r)
        den = LaurentPoly.const(self.coeff.denominator)
        for a, e in self._atoms.items():
            if e > 0:
                num = num * a.poly() ** e
            else:
                den = den * a.poly() ** (-e)
        return RationalFn(num, den)

    def subs_r(self, eps: int, a: int) -> "FactoredValue":
        """Specialize r -> eps*q^a atom by atom; raises on a pole."""
        if self.is_zero():
            return self
        coeff = self.coeff * (eps ** (self.e_r % 2))
        e_q = self.e_q + a * self.e_r
        out = Counter()
        order = 0
        for atom, e in self._atoms.items():
            if isinstance(atom, RMinus):
                if atom.eps == eps and atom.a == a:
                    order += e
                    continue
                # eps q^a - eps' q^a' = eps q^a (1 - s q^d)
                s, d = atom.eps * eps, atom.a - a
                c, x = eps, a
                if d > 0:
                    c *= -s
                    idx = _binomial_cyclotomics(d, s)
                elif d < 0:
                    x += d
                    idx = _binomial_cyclotomics(-d, s)
                else:
                    c *= 2
                    idx = []
                coeff *= Fraction(c) ** e
                e_q += x * e
                for m in idx:
                    out[Cyclotomic(m)] += e
            elif isinstance(atom, Cyclotomic):
                out[atom] += e
            else:
                p = atom.poly()
                lin = RMinus(eps, a).poly()
                u = p.subs_r(eps, a)
                while u.is_zero():
                    p = p.exact_div(lin)
                    order += e
                    u = p.subs_r(eps, a)
                c, x, y, sub = factor_poly(u)
                coeff *= c ** e
                e_q += x * e
                for k, v in sub.items():
                    out[k] += v * e
        if order > 0:
            return FactoredValue.zero()
        if order < 0:
            raise ValueError("specialization pole")
        return FactoredValue._raw(coeff, e_q, 0, out)

    def evaluate(self, q0, r0, p: int | None = None):
        return self.expand().evaluate(q0, r0, p)

    # -- display -----------------------------------------------------------
    def grouped(self) -> list:
        """Display atoms: quantum integers (smallest first), q^2-1, then the
        remaining cyclotomics as Generic polynomials."""
        out: Counter = Counter()
        cyc = {a.m: e for a, e in self._atoms.items() if isinstance(a, Cyclotomic)}
        for a, e in self._atoms.items():
            if not isinstance(a, Cyclotomic):
                out[a] += e
        for sign in (1, -1):
            part = {m: sign * e for m, e in cyc.items() if sign * e > 0}
            if not part:
                continue
            top = max(part)
            for k in range(2, top + 1):
                idx = quantum_cyclotomics(k)
                if not idx or any(m not in part for m in idx):
                    continue
                cnt = min(part[m] for m in idx)
                if cnt:
                    out[QuantumInt(k)] += sign * cnt
                    for m in idx:
                        part[m] -= cnt
            both = min(part.get(1, 0), part.get(2, 0))
            if both:
                out[QSquareMinusOne()] += sign * both
                part[1] -= both
                part[2] -= both
            for m, e in part.items():
                if e:
                    out[Generic(Cyclotomic(m).poly())] += sign * e
        return sorted(((a, e) for a, e in out.items() if e), key=lambda ae: _atom_key(ae[0]))

    def unit_string(self) -> str:
        mono = []
        if self.e_r:
            mono.append("r" if self.e_r == 1 else f"r^{self.e_r}")
        if self.e_q:
            mono.append("q" if self.e_q == 1 else f"q^{self.e_q}")
        body = "*".join(mono)
        c = self.coeff
        if not body:
            return str(c)
        if c == 1:
            return body
        if c == -1:
            return "-" + body
        return f"{c}*{body}"

    def render(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for atom, e in self.grouped():
            lab = atom.label()
            base = lab if isinstance(atom, QuantumInt) else f"({lab})"
            parts.append(base if e == 1 else f"{base}^{e}")
        unit = self.unit_string()
        if not parts:
            return unit
        if unit == "1":
            return " * ".join(parts)
        if unit == "-1":
            return "-" + " * ".join(parts)
        return " * ".join([unit] + parts)

    __str__ = render

    def __repr__(self):
        return f"FactoredValue({self.render()})"

    def to_json(self) -> dict:
        return {
            "unit": {"coeff": str(self.coeff), "e_q": self.e_q, "e_r": self.e_r},
            "factors": [{"atom": a.label(), "exp": e} for a, e in self.grouped()],
        }

    @classmethod
    def from_json(cls, data) -> "FactoredValue":
        u = data["unit"]
        return cls(Fraction(u["coeff"]), u["e_q"], u["e_r"],
                   [(parse_atom(f["atom"]), f["exp"]) for f in data["factors"]])


def _generic_value(g: dict) -> RationalFn:
    num, den = ONE, ONE
    for a, e in g.items():
        if e > 0:
            num = num * a.poly() ** e
        else:
            den = den * a.poly() ** (-e)
    return RationalFn(num, den)


def _canonical(atom):
    """Yield (canonical atom, multiplicity, unit (c, e_q, e_r)) triples."""
    if isinstance(atom, (RMinus, Cyclotomic)):
        return [(atom, 1, (1, 0, 0))]
    if isinstance(atom, QuantumInt):
        if atom.k < 2:
            raise ValueError("QuantumInt needs k >= 2")
        return [(Cyclotomic(m), 1, (1, 0, 0)) for m in quantum_cyclotomics(atom.k)]
    if isinstance(atom, QSquareMinusOne):
        return [(Cyclotomic(1), 1, (1, 0, 0)), (Cyclotomic(2), 1, (1, 0, 0))]
    if isinstance(atom, Generic):
        c, x, y, sub = factor_poly(atom.poly())
        out = [(a, e, (1, 0, 0)) for a, e in sub.items()]
        out.append((Cyclotomic(1), 0, (c, x, y)))
        return out
    raise TypeError(f"not a factor atom: {atom!r}")


def factorize(v) -> FactoredValue:
    """Trial-divide numerator and denominator by the known alphabet."""
    v = as_rational(v)
    if v.is_zero():
        return FactoredValue.zero()
    c1, x1, y1, a1 = factor_poly(v.num)
    c2, x2, y2, a2 = factor_poly(v.den)
    atoms = Counter(a1)
    for a, e in a2.items():
        atoms[a] -= e
    return FactoredValue._raw(c1 / c2, x1 - x2, y1 - y2, atoms)
