"""Seminormal matrices of T_i, E_i, L_i on a cell module and their
certification against the defining relations.

Matrices act on row vectors: f_t X = sum_s X[t][s] f_s, so the matrix of
a word x y is M(x) M(y).  Entries live in Q(q, r).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import combinatorics as cb
from .gram import e_tt, gamma
from .laurent import ONE, ZERO, LaurentPoly, poly_gcd
from .rational import QR, RR, RationalFn, delta_param, omega


# ---------------------------------------------------------------------------
# sparse matrices over Q(q, r)


class SparseMatrix:
    """Square matrix as {(row, col): RationalFn}, zeros not stored."""

    __slots__ = ("size", "entries")

    def __init__(self, size: int, entries=None):
        self.size = size
        self.entries = {k: v for k, v in (entries or {}).items() if not v.is_zero()}

    @classmethod
    def identity(cls, size, scalar=None):
        s = RationalFn(1) if scalar is None else scalar
        return cls(size, {(i, i): s for i in range(size)})

    @classmethod
    def diagonal(cls, values):
        return cls(len(values), {(i, i): v for i, v in enumerate(values)})

    def __getitem__(self, key):
        return self.entries.get(key, RationalFn(0))

    def __setitem__(self, key, value):
        if value.is_zero():
            self.entries.pop(key, None)
        else:
            self.entries[key] = value

    def copy(self):
        return SparseMatrix(self.size, dict(self.entries))

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.entries)

    def to_lists(self):
        return [[self[i, j] for j in range(self.size)] for i in range(self.size)]


def _lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a == b:
        return a
    g = poly_gcd(a, b)
    return a * b.exact_div(g)


class PolyMatrix:
    """Matrix written as (polynomial matrix) / (common denominator)."""

    __slots__ = ("size", "num", "den")

    def __init__(self, size, num, den):
        self.size = size
        self.num = {k: v for k, v in num.items() if not v.is_zero()}
        self.den = den

    @classmethod
    def from_sparse(cls, m: SparseMatrix) -> "PolyMatrix":
        den = ONE
        for v in m.entries.values():
            den = _lcm(den, v.den)
        num = {k: v.num * den.exact_div(v.den) for k, v in m.entries.items()}
        return cls(m.size, num, den)

    @classmethod
    def scalar(cls, size, value: RationalFn) -> "PolyMatrix":
        return cls(size, {(i, i): value.num for i in range(size)}, value.den)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        rows: dict = {}
        for (i, k), a in self.num.items():
            rows.setdefault(k, []).append((i, a))
        out: dict = {}
        for (k, j), b in other.num.items():
            for i, a in rows.get(k, ()):
                key = (i, j)
                prod = a * b
                out[key] = out[key] + prod if key in out else prod
        return PolyMatrix(self.size, out, self.den * other.den)

    def _combine(self, other, sign):
        if self.den == other.den:
            out = dict(self.num)
            for k, v in other.num.items():
                out[k] = out[k] + sign * v if k in out else sign * v
            return PolyMatrix(self.size, out, self.den)
        out = {k: v * other.den for k, v in self.num.items()}
        for k, v in other.num.items():
            w = sign * v * self.den
            out[k] = out[k] + w if k in out else w
        return PolyMatrix(self.size, out, self.den * other.den)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c: RationalFn) -> "PolyMatrix":
        return PolyMatrix(self.size, {k: v * c.num for k, v in self.num.items()}, self.den * c.den)

    def equals(self, other: "PolyMatrix"):
        """None if equal, else the first differing position (row-major)."""
        for key in sorted(set(self.num) | set(other.num)):
            a = self.num.get(key, ZERO) * other.den
            b = other.num.get(key, ZERO) * self.den
            if a != b:
                return key
        return None

    def entry(self, key) -> RationalFn:
        return RationalFn(self.num.get(key, ZERO), self.den)


# ---------------------------------------------------------------------------
# linear algebra on small blocks


def solve(M: list, b: list) -> list:
    """Gaussian elimination over Q(q, r)."""
    m = len(M)
    A = [row[:] + [b[i]] for i, row in enumerate(M)]
    for c in range(m):
        piv = next((r for r in range(c, m) if not A[r][c].is_zero()), None)
        if piv is None:
            raise ValueError("non-generic block")
        A[c], A[piv] = A[piv], A[c]
        inv = A[c][c].inverse()
        A[c] = [x * inv for x in A[c]]
        for r in range(m):
            if r != c and not A[r][c].is_zero():
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[i][m] for i in range(m)]


def invert(M: list) -> list:
    m = len(M)
    cols = [solve(M, [RationalFn(int(i == j)) for i in range(m)]) for j in range(m)]
    return [[cols[j][i] for j in range(m)] for i in range(m)]


# ---------------------------------------------------------------------------
# construction


@dataclass
class RepBlock:
    n: int
    cell: cb.CellLabel
    basis: tuple
    T: list           # T[i-1] is T_i
    E: list
    L: list           # L[k-1] is L_k (diagonal)
    T_inv: list = field(default_factory=list)
    classes: list = field(default_factory=list)   # per i: list of index lists

    @property
    def dim(self) -> int:
        return len(self.basis)


def _rf(c: cb.Content) -> RationalFn:
    return RationalFn(c.poly())


def _s_diag(t, i) -> RationalFn:
    """omega c_t(i+1) / (c_t(i+1) - c_t(i))."""
    x, y = _rf(cb.content_at(t, i)), _rf(cb.content_at(t, i + 1))
    return omega() * y / (y - x)


def _classes(basis, i):
    groups: dict = {}
    for a, t in enumerate(basis):
        groups.setdefault((t[:i], t[i + 1:]), []).append(a)
    return list(groups.values())


def _solve_intertwiner(e, ga, D1, D2, wr):
    """Solve X D2 - D1 X + (w/r) E D1 X = w D2 on one class.

    E[a][b] = u_a v_b is rank one (u_a = e_a ga_a, v_b = 1 / ga_b), so
    column b reads X_ab (D2_b - D1_a) = w D2_b [a = b] - (w/r) u_a S_b with
    the scalar S_b = sum_k v_k D1_k X_kb, which is solved for first.
    """
    m = len(e)
    w = omega()
    X = [[None] * m for _ in range(m)]
    for b in range(m):
        gaps = [D2[b] - D1[a] for a in range(m)]
        if any(g.is_zero() for g in gaps):
            raise ValueError("non-generic block")
        coef = RationalFn(1)
        for a in range(m):
            coef = coef + wr * e[a] * D1[a] / gaps[a]
        if coef.is_zero():
            raise ValueError("non-generic block")
        S = w * D2[b] * D1[b] / (ga[b] * gaps[b] * coef)
        for a in range(m):
            rhs = -wr * e[a] * ga[a] * S
            if a == b:
                rhs = rhs + w * D2[b]
            X[a][b] = rhs / gaps[a]
    return X


def build_rep(n: int, f: int, lam, certify: bool = True) -> RepBlock:
    lam = tuple(lam)
    basis = cb.enum_updown(n, f, lam)
    N = len(basis)
    w = omega()
    q, r = QR, RR
    Ts, Es, Tinvs, allcls = [], [], [], []
    for i in range(1, n):
        T, E, Ti = SparseMatrix(N), SparseMatrix(N), SparseMatrix(N)
        cls_i = _classes(basis, i)
        for idx in cls_i:
            t = basis[idx[0]]
            if t[i - 1] != t[i + 1]:
                if len(idx) == 1:
                    (p1, _), (p2, _) = cb.step(t[i - 1], t[i]), cb.step(t[i], t[i + 1])
                    v = q if p1[0] == p2[0] else -q.inverse()
                    T[idx[0], idx[0]] = v
                    Ti[idx[0], idx[0]] = v.inverse()
                    continue
                a, b = idx
                if cb.tableau_lower(basis[a], basis[b]):
                    a, b = b, a
                # a is the larger tableau
                sa, sb = _s_diag(basis[a], i), _s_diag(basis[b], i)
                block = [[sa, RationalFn(1)], [sa * sb + 1, sb]]
                inv = invert(block)
                for x, u in enumerate((a, b)):
                    for y, v in enumerate((a, b)):
                        T[u, v] = block[x][y]
                        Ti[u, v] = inv[x][y]
                continue
            m = len(idx)
            tabs = [basis[a] for a in idx]
            e = [e_tt(s, i) for s in tabs]
            ga = [gamma(s[i], s[i - 1]) for s in tabs]
            Eb = [[e[x] * ga[x] / ga[y] for y in range(m)] for x in range(m)]
            D1 = [_rf(cb.content_at(s, i)) for s in tabs]
            D2 = [_rf(cb.content_at(s, i + 1)) for s in tabs]
            X = _solve_intertwiner(e, ga, D1, D2, w / r)
            inv = invert(X)
            for x, u in enumerate(idx):
                for y, v in enumerate(idx):
                    T[u, v] = X[x][y]
                    E[u, v] = Eb[x][y]
                    Ti[u, v] = inv[x][y]
        Ts.append(T)
        Es.append(E)
        Tinvs.append(Ti)
        allcls.append(cls_i)
    Ls = [SparseMatrix.diagonal([_rf(cb.content_at(t, k)) for t in basis]) for k in range(1, n + 1)]
    rep = RepBlock(n, cb.CellLabel(f, lam), basis, Ts, Es, Ls, Tinvs, allcls)
    if certify:
        report = certify_relations(rep)
        if not report.passed:
            raise RuntimeError(f"relations failed: {report.failures()}")
    return rep


# ---------------------------------------------------------------------------
# certification


@dataclass
class RelationResult:
    name: str
    passed: bool
    seconds: float
    detail: str = ""


@dataclass
class CertReport:
    cell: cb.CellLabel
    n: int
    dim: int
    results: list

    @property
    def passed(self) -> bool:
        return all(x.passed for x in self.results)

    def failures(self) -> list:
        return [x.name for x in self.results if not x.passed]

    def by_family(self) -> dict:
        out: dict = {}
        for x in self.results:
            fam = x.name.split("(")[0]
            out[fam] = out.get(fam, True) and x.passed
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n, "f": self.cell.f, "lambda": cb.format_partition(self.cell.lam),
            "dim": self.dim, "passed": self.passed,
            "relations": [{"name": x.name, "passed": x.passed, "seconds": round(x.seconds, 6),
                           **({"difference": x.detail} if x.detail else {})}
                          for x in self.results],
        }


def certify_relations(rep: RepBlock) -> CertReport:
    n, N = rep.n, rep.dim
    T = [PolyMatrix.from_sparse(x) for x in rep.T]
    Ti = [PolyMatrix.from_sparse(x) for x in rep.T_inv]
    E = [PolyMatrix.from_sparse(x) for x in rep.E]
    L = [PolyMatrix.from_sparse(x) for x in rep.L]
    q, r, w, d = QR, RR, omega(), delta_param()
    I = PolyMatrix.scalar(N, RationalFn(1))
    Z = PolyMatrix(N, {}, ONE)

    def sc(v):
        return PolyMatrix.scalar(N, v)

    results = []

    def check(name, lhs_fn, rhs_fn):
        t0 = time.perf_counter()
        lhs, rhs = lhs_fn(), rhs_fn()
        key = lhs.equals(rhs)
        detail = ""
        if key is not None:
            diff = lhs.entry(key) - rhs.entry(key)
            detail = f"entry {key}: {diff}"
        results.append(RelationResult(name, key is None, time.perf_counter() - t0, detail))

    check("L1", lambda: L[0], lambda: sc(r))
    for i in range(1, n):
        Tm, Tinv, Em = T[i - 1], Ti[i - 1], E[i - 1]
        check(f"inverse({i})", lambda: Tm @ Tinv, lambda: I)
        check(f"cubic({i})", lambda: (Tm - sc(q)) @ (Tm + sc(q.inverse())) @ (Tm - sc(r.inverse())),
              lambda: Z)
        check(f"Edef({i})", lambda: Em, lambda: I - (Tm - Tinv).scale(w.inverse()))
        check(f"ET({i})", lambda: Em @ Tm, lambda: Em.scale(r.inverse()))
        check(f"TE({i})", lambda: Tm @ Em, lambda: Em.scale(r.inverse()))
        check(f"EE({i})", lambda: Em @ Em, lambda: Em.scale(d))
        check(f"LTL({i})", lambda: L[i], lambda: Tm @ L[i - 1] @ Tm)
        check(f"TLL({i})", lambda: Tm @ L[i - 1] @ L[i], lambda: L[i - 1] @ L[i] @ Tm)
    for i in range(1, n):
        for j in (i - 1, i + 1):
            if not 1 <= j <= n - 1:
                continue
            Ei, Tj, Tjinv, Ej, Tii = E[i - 1], T[j - 1], Ti[j - 1], E[j - 1], T[i - 1]
            check(f"ETE({i},{j})", lambda: Ei @ Tj @ Ei, lambda: Ei.scale(r))
            check(f"ETinvE({i},{j})", lambda: Ei @ Tjinv @ Ei, lambda: Ei.scale(r.inverse()))
            check(f"EEE({i},{j})", lambda: Ei @ Ej @ Ei, lambda: Ei)
            check(f"EE-TTE({i},{j})", lambda: Ei @ Ej, lambda: Tj @ Tii @ Ej)
            check(f"EE-ETT({i},{j})", lambda: Ei @ Ej, lambda: Ei @ Tj @ Tii)
        if i + 1 <= n - 1:
            A, B = T[i - 1], T[i]
            check(f"braid({i})", lambda: A @ B @ A, lambda: B @ A @ B)
        for j in range(i + 2, n):
            A, B = T[i - 1], T[j - 1]
            check(f"commute({i},{j})", lambda: A @ B, lambda: B @ A)
            Ea = E[i - 1]
            check(f"ET-commute({i},{j})", lambda: Ea @ B, lambda: B @ Ea)
    return CertReport(rep.cell, n, N, results)


def central_scalar(rep: RepBlock) -> RationalFn:
    """The scalar by which L_2 ... L_n acts."""
    N = rep.dim
    vals = [RationalFn(1)] * N
    for k in range(2, rep.n + 1):
        Lk = rep.L[k - 1]
        if not Lk.is_diagonal():
            raise ValueError("centrality violated")
        vals = [v * Lk[a, a] for a, v in enumerate(vals)]
    if any(v != vals[0] for v in vals):
        raise ValueError("centrality violated")
    return vals[0]


def symmetric_form_defect(rep: RepBlock, norms) -> list:
    """Positions where X[t][s] d_s != X[s][t] d_t, for X among T_i and E_i."""
    bad = []
    for name, mats in (("T", rep.T), ("E", rep.E)):
        for i, M in enumerate(mats, start=1):
            for (a, b), v in M.entries.items():
                if a < b and v * norms[b] != M[b, a] * norms[a]:
                    bad.append((name, i, a, b))
    return bad
