"""Laurent polynomials in q and r with integer coefficients.

Terms are stored as a dict mapping (e_q, e_r) to a nonzero int.  The gcd and
exact division work on the shifted ordinary polynomial, viewed as a
polynomial in r whose coefficients are dense integer lists in q.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

# ---------------------------------------------------------------------------
# dense univariate helpers over Z[q]; lists are low degree first, no trailing 0


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _u_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _u_sub(a, b):
    out = list(a)
    if len(out) < len(b):
        out.extend([0] * (len(b) - len(out)))
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _u_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _u_content(a) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _u_prim(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    g = _u_content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a] if g != 1 else list(a)


def _u_divexact(a, b):
    """a / b in Z[q] if exact, else None."""
    if not a:
        return []
    db = len(b) - 1
    if len(a) - 1 < db:
        return None
    a = list(a)
    lb = b[-1]
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c:
            continue
        if c % lb:
            return None
        f = c // lb
        quo[i - db] = f
        base = i - db
        for j, y in enumerate(b):
            if y:
                a[base + j] -= f * y
    if any(a[:db]):
        return None
    return _trim(quo)


def _u_prem(a, b):
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while a and len(a) - 1 >= db:
        c = a[-1]
        k = len(a) - 1 - db
        a = [x * lb for x in a]
        for j, y in enumerate(b):
            a[k + j] -= c * y
        _trim(a)
    return a


def _u_gcd(a, b):
    """Primitive gcd in Z[q] (integer content dropped), positive lead."""
    if not a:
        return _u_prim(b)
    if not b:
        return _u_prim(a)
    a, b = _u_prim(a), _u_prim(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        r = _u_prem(a, b)
        a, b = b, _u_prim(r)
    return a


# ---------------------------------------------------------------------------
# dense bivariate helpers: list over r-degree of Z[q] lists


def _b_trim(A):
    while A and not A[-1]:
        A.pop()
    return A


def _b_content(A):
    g = []
    for row in A:
        if row:
            g = _u_gcd(g, row)
            if len(g) == 1:
                return [1]
    return g


def _b_divexact_u(A, c):
    return [(_u_divexact(row, c) if row else []) for row in A]


def _b_prem(A, B):
    A = [list(x) for x in A]
    db = len(B) - 1
    lb = B[-1]
    while A and len(A) - 1 >= db:
        c = A[-1]
        k = len(A) - 1 - db
        A = [_u_mul(x, lb) for x in A]
        for j, y in enumerate(B):
            if y:
                A[k + j] = _u_sub(A[k + j], _u_mul(c, y))
        _b_trim(A)
    return A


def _b_prim(A):
    c = _b_content(A)
    if c == [1]:
        return [list(x) for x in A]
    return _b_divexact_u(A, c)


def _b_gcd(A, B):
    if not A:
        return _b_prim(B)
    if not B:
        return _b_prim(A)
    c = _u_gcd(_b_content(A), _b_content(B))
    A, B = _b_prim(A), _b_prim(B)
    if len(A) < len(B):
        A, B = B, A
    while B:
        if len(B) == 1:
            A = [[1]]
            break
        R = _b_prem(A, B)
        A, B = B, (_b_prim(R) if R else [])
    return [_u_mul(c, row) for row in A]


def _b_divexact(A, B):
    db = len(B) - 1
    if len(A) - 1 < db:
        return None if A else []
    A = [list(x) for x in A]
    lb = B[-1]
    quo = [[] for _ in range(len(A) - db)]
    for i in range(len(A) - 1, db - 1, -1):
        c = A[i]
        if not c:
            continue
        f = _u_divexact(c, lb)
        if f is None:
            return None
        quo[i - db] = f
        base = i - db
        for j, y in enumerate(B):
            if y:
                A[base + j] = _u_sub(A[base + j], _u_mul(f, y))
    if any(A):
        return None
    return _b_trim(quo)


# ---------------------------------------------------------------------------


def _glex(k):
    # graded-lex on (e_r, e_q)
    return (k[0] + k[1], k[1], k[0])


_KRONECKER_MIN = 12


def _kronecker_mul(a: dict, b: dict) -> dict:
    """Product via packing both operands into one big integer each.

    Exponents are shifted to start at zero and the slot (e_q, e_r) maps to
    digit e_r * W + e_q, W exceeding the q-degree of the product.  Digits
    are whole bytes wide and large enough to hold any product coefficient
    with its sign, so the unpacking is exact.
    """
    aq = min(k[0] for k in a); ar = min(k[1] for k in a)
    bq = min(k[0] for k in b); br = min(k[1] for k in b)
    W = max(k[0] for k in a) - aq + max(k[0] for k in b) - bq + 1
    H = max(k[1] for k in a) - ar + max(k[1] for k in b) - br + 1
    bound = max(abs(c) for c in a.values()) * max(abs(c) for c in b.values()) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    bits = 8 * nbytes

    def pack(t, mq, mr):
        v = 0
        for (x, y), c in t.items():
            v += c << (bits * ((y - mr) * W + (x - mq)))
        return v

    prod_ = pack(a, aq, ar) * pack(b, bq, br)
    slots = W * H
    half = 1 << (bits - 1)
    # bias every digit by 2^(bits-1) so all digits become non-negative
    bias = int.from_bytes((bytes(nbytes - 1) + b"\x80") * slots, "little")
    raw = (prod_ + bias).to_bytes(nbytes * slots, "little")
    out = {}
    mq, mr = aq + bq, ar + br
    for idx in range(slots):
        c = int.from_bytes(raw[idx * nbytes:(idx + 1) * nbytes], "little") - half
        if c:
            y, x = divmod(idx, W)
            out[(x + mq, y + mr)] = c
    return out


class LaurentPoly:
    """Element of Z[q^±1, r^±1]; immutable."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms=None):
        t: dict[tuple[int, int], int] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                c = int(c)
                if not c:
                    continue
                k = (int(k[0]), int(k[1]))
                v = t.get(k, 0) + c
                if v:
                    t[k] = v
                else:
                    del t[k]
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, d):
        obj = object.__new__(cls)
        obj._t = d
        obj._h = None
        return obj

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw({(0, 0): int(c)} if c else {})

    @classmethod
    def monomial(cls, c: int = 1, e_q: int = 0, e_r: int = 0) -> "LaurentPoly":
        return cls._raw({(e_q, e_r): int(c)} if c else {})

    # -- basic protocol ----------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and (0, 0) in self._t)

    def constant_value(self) -> int:
        return self._t.get((0, 0), 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # -- ring operations ---------------------------------------------------
    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._t.items()})

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._t:
            return self
        if not self._t:
            return other
        d = dict(self._t)
        for k, c in other._t.items():
            v = d.get(k, 0) + c
            if v:
                d[k] = v
            else:
                del d[k]
        return LaurentPoly._raw(d)

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
        a, b = self._t, other._t
        if not a or not b:
            return LaurentPoly._raw({})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((bq, br), bc), = b.items()
            return LaurentPoly._raw({(x + bq, y + br): c * bc for (x, y), c in a.items()})
        if len(b) >= _KRONECKER_MIN:
            return LaurentPoly._raw(_kronecker_mul(a, b))
        d: dict = {}
        get = d.get
        for (x1, y1), c1 in a.items():
            for (x2, y2), c2 in b.items():
                k = (x1 + x2, y1 + y2)
                d[k] = get(k, 0) + c1 * c2
        return LaurentPoly._raw({k: v for k, v in d.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            ((x, y), c), = self._t.items()
            if abs(c) != 1:
                raise ValueError("negative power needs a unit coefficient")
            k = -e
            return LaurentPoly._raw({(-x * k, -y * k): c ** k})
        out = LaurentPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def scale(self, c: int) -> "LaurentPoly":
        if not c:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({k: v * c for k, v in self._t.items()})

    def shift(self, e_q: int = 0, e_r: int = 0) -> "LaurentPoly":
        if not e_q and not e_r:
            return self
        return LaurentPoly._raw({(x + e_q, y + e_r): c for (x, y), c in self._t.items()})

    # -- structure ---------------------------------------------------------
    def min_exponents(self) -> tuple[int, int]:
        return (min(k[0] for k in self._t), min(k[1] for k in self._t))

    def max_exponents(self) -> tuple[int, int]:
        return (max(k[0] for k in self._t), max(k[1] for k in self._t))

    def degree_r(self) -> int:
        return max(k[1] for k in self._t) - min(k[1] for k in self._t)

    def span_q(self) -> int:
        return max(k[0] for k in self._t) - min(k[0] for k in self._t)

    def leading(self) -> tuple[tuple[int, int], int]:
        k = max(self._t, key=_glex)
        return k, self._t[k]

    def content(self) -> int:
        g = 0
        for c in self._t.values():
            g = gcd(g, c)
        return g

    def normal(self) -> "LaurentPoly":
        """Shift minimal exponents to zero, drop integer content, make the
        graded-lex leading coefficient positive."""
        if not self._t:
            return self
        mq, mr = self.min_exponents()
        g = self.content()
        if self.leading()[1] < 0:
            g = -g
        return LaurentPoly._raw({(x - mq, y - mr): c // g for (x, y), c in self._t.items()})

    def _dense(self):
        mq, mr = self.min_exponents()
        Mr = max(k[1] for k in self._t) - mr
        rows: list[list[int]] = [[] for _ in range(Mr + 1)]
        for (x, y), c in self._t.items():
            row = rows[y - mr]
            i = x - mq
            if len(row) <= i:
                row.extend([0] * (i + 1 - len(row)))
            row[i] = c
        return rows, mq, mr

    @classmethod
    def _from_dense(cls, rows, mq=0, mr=0):
        d = {}
        for j, row in enumerate(rows):
            for i, c in enumerate(row):
                if c:
                    d[(i + mq, j + mr)] = c
        return cls._raw(d)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """self / other in the Laurent ring, or None if not exact."""
        if not other._t:
            raise ZeroDivisionError("division by zero polynomial")
        if not self._t:
            return self
        if other.is_monomial():
            ((x, y), c), = other._t.items()
            if any(v % c for v in self._t.values()):
                return None
            return LaurentPoly._raw({(a - x, b - y): v // c for (a, b), v in self._t.items()})
        A, aq, ar = self._dense()
        B, bq, br = other._dense()
        Qd = _b_divexact(A, B)
        if Qd is None:
            return None
        return LaurentPoly._from_dense(Qd, aq - bq, ar - br)

    # -- specialisation ----------------------------------------------------
    def subs_r(self, eps: int, a: int) -> "LaurentPoly":
        """Substitute r -> eps*q^a; the result has no r."""
        d: dict = {}
        for (x, y), c in self._t.items():
            k = (x + a * y, 0)
            if eps == -1 and y % 2:
                c = -c
            d[k] = d.get(k, 0) + c
        return LaurentPoly._raw({k: v for k, v in d.items() if v})

    def evaluate(self, q0, r0, p: int | None = None):
        """Exact value at (q0, r0) over Q (p None) or GF(p)."""
        if p is None:
            q0, r0 = Fraction(q0), Fraction(r0)
            total = Fraction(0)
            for (x, y), c in self._t.items():
                total += c * q0 ** x * r0 ** y
            return total
        q0, r0 = _to_gf(q0, p), _to_gf(r0, p)
        total = 0
        for (x, y), c in self._t.items():
            total += c * pow(q0, x, p) * pow(r0, y, p)
        return total % p

    # -- printing ----------------------------------------------------------
    def sorted_terms(self):
        return sorted(self._t.items(), key=lambda kv: (kv[0][1], kv[0][0]), reverse=True)

    def __str__(self):
        return self.to_string()

    def to_string(self, compact: bool = False) -> str:
        if not self._t:
            return "0"
        parts = []
        for (x, y), c in self.sorted_terms():
            mono = []
            if y:
                mono.append("r" if y == 1 else f"r^{y}")
            if x:
                mono.append("q" if x == 1 else f"q^{x}")
            body = "*".join(mono)
            if not body:
                s = str(abs(c))
            elif abs(c) == 1:
                s = body
            else:
                s = f"{abs(c)}*{body}"
            parts.append((c < 0, s))
        sep_p, sep_m = ("+", "-") if compact else (" + ", " - ")
        neg, s = parts[0]
        out = ("-" if neg else "") + s
        for neg, s in parts[1:]:
            out += (sep_m if neg else sep_p) + s
        return out

    def __repr__(self):
        return f"LaurentPoly({self.to_string()!r})"

    def to_json(self) -> list:
        return [[c, x, y] for (x, y), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls({(x, y): c for c, x, y in data})


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    return NotImplemented


def _to_gf(x, p):
    if isinstance(x, Fraction):
        return x.numerator * pow(x.denominator, -1, p) % p
    return int(x) % p


Q = LaurentPoly.monomial(1, 1, 0)
R = LaurentPoly.monomial(1, 0, 1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly.const(0)


# ---------------------------------------------------------------------------
# coprimality certificate by specialization modulo a prime

_P = (1 << 61) - 1
_Q0 = 1234577
_R0 = 7654337


def _gf_gcd_degree(a: list, b: list) -> int:
    """Degree of gcd(a, b) in GF(_P)[x]; inputs are coefficient lists."""
    a = _trim([x % _P for x in a])
    b = _trim([x % _P for x in b])
    while b:
        inv = pow(b[-1], -1, _P)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            c = a[-1] * inv % _P
            k = len(a) - 1 - db
            for j, y in enumerate(b):
                a[k + j] = (a[k + j] - c * y) % _P
            _trim(a)
        a, b = b, a
    return len(a) - 1


def _horner(row: list, x: int) -> int:
    v = 0
    for c in reversed(row):
        v = (v * x + c) % _P
    return v


def _certainly_coprime(A: list, B: list) -> bool:
    """True only if gcd(A, B) is provably a constant.

    A common factor g keeps its degree in q after r -> _R0 when the
    q-leading coefficient of A survives, and likewise for r; a constant
    gcd of both images then rules out any non-constant g.
    """
    wq = max(len(row) for row in A)
    lcq = sum(row[-1] * pow(_R0, i, _P) for i, row in enumerate(A) if len(row) == wq) % _P
    if lcq == 0 or _horner(A[-1], _Q0) == 0:
        return False
    wb = max(len(row) for row in B)

    def at_r(M, width):
        out = [0] * width
        for i, row in enumerate(M):
            ri = pow(_R0, i, _P)
            for j, c in enumerate(row):
                out[j] = (out[j] + c * ri) % _P
        return out

    if _gf_gcd_degree(at_r(A, wq), at_r(B, wb)) != 0:
        return False
    return _gf_gcd_degree([_horner(row, _Q0) for row in A], [_horner(row, _Q0) for row in B]) == 0


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Canonical gcd of two Laurent polynomials (primitive, positive lead,
    minimal exponents zero)."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd undefined")
    if a.is_zero():
        return b.normal()
    if b.is_zero():
        return a.normal()
    if a.is_monomial() or b.is_monomial():
        return ONE
    A, _, _ = a._dense()
    B, _, _ = b._dense()
    if _certainly_coprime(A, B):
        return ONE
    if len(A) == 1 and len(B) == 1:
        g = [_u_gcd(A[0], B[0])]
    elif len(A) == 1:
        g = [_u_gcd(A[0], _b_content(B))]
    elif len(B) == 1:
        g = [_u_gcd(B[0], _b_content(A))]
    else:
        g = _b_gcd(A, B)
    return LaurentPoly._from_dense(g).normal()


def quantum_int(m: int) -> LaurentPoly:
    """[m] = 1 + q^2 + ... + q^(2m-2), with [0] = 0 and [-m] = -q^(-2m)[m]."""
    if m == 0:
        return ZERO
    if m > 0:
        return LaurentPoly._raw({(2 * i, 0): 1 for i in range(m)})
    return LaurentPoly._raw({(-2 * i, 0): -1 for i in range(1, -m + 1)})


def quantum_factorial(lam) -> LaurentPoly:
    out = ONE
    for part in lam:
        for i in range(2, part + 1):
            out = out * quantum_int(i)
    return out


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*((?:[qr](?:\^-?\d+)?\*?)*)")


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of LaurentPoly.to_string (spaced or compact)."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return ZERO
    terms = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        sign, digits, mono = m.groups()
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        x = y = 0
        for var, exp in re.findall(r"([qr])(?:\^(-?\d+))?", mono):
            e = int(exp) if exp else 1
            if var == "q":
                x += e
            else:
                y += e
        if not digits and not mono:
            raise ValueError(f"cannot parse polynomial {text!r}")
        terms[(x, y)] = terms.get((x, y), 0) + c
        pos = m.end()
    return LaurentPoly(terms)
