"""Norms of the orthogonal basis and Gram determinants of cell modules.

The branching scalar gamma(lam, mu) belongs to the edge mu -> lam of the
branching graph (one box added or removed).  The norm of f_t is the
product of the branching scalars along t, and the Gram determinant of a
cell is the product of the norms of its basis, or equivalently the
branching recursion over the cells one level down.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import combinatorics as cb
from .factored import FactoredValue, RMinus, factorize
from .laurent import quantum_factorial
from .rational import RR, QR, RationalFn, delta_param, omega, quantum_int_rf


@dataclass(frozen=True)
class GramDeterminant:
    n: int
    f: int
    lam: tuple
    dim: int
    value: FactoredValue

    def to_json(self) -> dict:
        rec = {"n": self.n, "f": self.f, "lambda": cb.format_partition(self.lam), "dim": self.dim}
        rec.update(self.value.to_json())
        return rec

    @classmethod
    def from_json(cls, data) -> "GramDeterminant":
        return cls(data["n"], data["f"], cb.parse_partition(data["lambda"]), data["dim"],
                   FactoredValue.from_json(data))


def _content_rf(c: cb.Content) -> RationalFn:
    return RationalFn(c.poly())


# ---------------------------------------------------------------------------
# E_tt(k)


@lru_cache(maxsize=None)
def _ett_shapes(alpha: tuple, x: tuple) -> RationalFn:
    """E_tt(k) for t with t_{k-1} = t_{k+1} = alpha and t_k = x."""
    w = omega()
    c = _content_rf(cb.step_content(alpha, x))
    ci = c.inverse()
    val = RR * ci * (1 + (c - ci) / w)
    for y in cb.neighbours(alpha):
        if y == x:
            continue
        cs = _content_rf(cb.step_content(alpha, y))
        val = val * (c - cs.inverse()) / (c - cs)
    return val


def e_tt(t, k: int) -> RationalFn:
    if not 1 <= k <= len(t) - 2:
        raise ValueError("k must lie in 1..n-1")
    if t[k - 1] != t[k + 1]:
        raise ValueError("E_tt(k) needs t_{k-1} = t_{k+1}")
    return _ett_shapes(t[k - 1], t[k])


# ---------------------------------------------------------------------------
# branching scalars


def gamma_add(lam: tuple, p) -> RationalFn:
    """Scalar of the edge lam - p -> lam (a box added)."""
    lam = tuple(lam)
    k = p[0]
    c = cb.node_content(lam, p, "removable")
    num = RationalFn(1)
    den = RationalFn(1)
    for r1 in cb.addable(lam):
        if r1[0] > k:
            num = num * quantum_int_rf(c + cb.node_content(lam, r1, "addable"))
    for r2 in cb.removable(lam):
        if r2[0] > k:
            den = den * quantum_int_rf(c - cb.node_content(lam, r2, "removable"))
    return -(QR ** (2 * lam[k - 1])) * num / den


def gamma_remove(lam: tuple, mu: tuple) -> RationalFn:
    """Scalar of the edge mu -> lam where lam = mu minus one box."""
    lam, mu = tuple(lam), tuple(mu)
    p, s = cb.step(lam, mu)
    if s != 1:
        raise ValueError(f"{mu} is not {lam} plus one box")
    k = p[0]
    mk = mu[k - 1]
    if k >= len(lam):
        # the box sits in the last row of mu
        t = cb.t_lambda(sum(mu), 0, mu) + (lam,)
        return quantum_int_rf(mk) * e_tt(t, len(t) - 2)
    a = sum(mu[:k])
    top = mu[:k]
    v = cb.t_lambda(a, 0, top) + (cb.remove_node(top, p),)
    ev = e_tt(v, a)
    r2 = RR * RR
    cp = cb.node_content(mu, p, "removable")
    val = quantum_int_rf(mk) * ev / (r2 * QR ** (2 * (mk - 2 * k)) - 1)
    for n1 in cb.addable(mu):
        if n1[0] > k:
            val = val * (r2 * QR ** (-2 * (cp - cb.node_content(mu, n1, "addable"))) - 1)
    for n2 in cb.removable(mu):
        if n2[0] > k:
            val = val / (r2 * QR ** (-2 * (cp + cb.node_content(mu, n2, "removable"))) - 1)
    return val


@lru_cache(maxsize=None)
def gamma(lam: tuple, mu: tuple) -> RationalFn:
    """Branching scalar of the edge mu -> lam; depends only on the shapes."""
    p, s = cb.step(mu, lam)
    if s > 0:
        return gamma_add(lam, p)
    return gamma_remove(lam, mu)


@lru_cache(maxsize=None)
def gamma_factored(lam: tuple, mu: tuple) -> FactoredValue:
    return factorize(gamma(lam, mu))


# ---------------------------------------------------------------------------
# norms


@lru_cache(maxsize=None)
def norm_of(t: tuple) -> RationalFn:
    """<f_t, f_t>, memoized on prefixes."""
    if len(t) <= 1:
        return RationalFn(1)
    return norm_of(t[:-1]) * gamma(t[-1], t[-2])


def base_norm(n: int, f: int, lam) -> RationalFn:
    """delta^f [lam]!, the norm of the maximal tableau."""
    return delta_param() ** f * RationalFn(quantum_factorial(tuple(lam)))


def norm_step_check(t: tuple, k: int) -> RationalFn:
    """The ratio <f_s, f_s> / <f_t, f_t> for s = t s_k below t."""
    if t[k - 1] == t[k + 1]:
        raise ValueError("needs t_{k-1} != t_{k+1}")
    s = cb.apply_s(t, k)
    if s is None:
        raise ValueError("t s_k does not exist")
    if not cb.tableau_lower(s, t):
        raise ValueError("t s_k must lie below t")
    x = _content_rf(cb.content_at(t, k))
    y = _content_rf(cb.content_at(t, k + 1))
    w = omega()
    return 1 - w * w * x * y / ((y - x) * (y - x))


# ---------------------------------------------------------------------------
# determinants


def gram_det_direct(n: int, f: int, lam) -> GramDeterminant:
    """Product over the basis of the norms, factorized tableau by tableau."""
    lam = tuple(lam)
    tabs = cb.enum_updown(n, f, lam)
    val = FactoredValue(1)
    for t in tabs:
        val = val * factorize(norm_of(t))
    return GramDeterminant(n, f, lam, len(tabs), val)


_recursive_memo: dict = {}


def gram_det_recursive(n: int, f: int, lam, store=None) -> GramDeterminant:
    """det over the branching graph: prod det(l, mu) * gamma^dim(l, mu).

    ``store`` is an optional mapping (n, f, lam) -> FactoredValue consulted
    before and filled after computing, in addition to the process memo.
    """
    lam = tuple(lam)
    key = (n, f, lam)
    dim = cb.cell_dim(n, f, lam)
    hit = _recursive_memo.get(key)
    if hit is None and store is not None:
        hit = store.get(key)
    if hit is None:
        if n == 0:
            hit = FactoredValue(1)
        else:
            hit = FactoredValue(1)
            for l, mu in cb.branching_predecessors(n, f, lam):
                sub = gram_det_recursive(n - 1, l, mu, store)
                hit = hit * sub.value * gamma_factored(lam, mu) ** sub.dim
        _recursive_memo[key] = hit
        if store is not None:
            store[key] = hit
    elif key not in _recursive_memo:
        _recursive_memo[key] = hit
    return GramDeterminant(n, f, lam, dim, hit)


def clear_memo():
    _recursive_memo.clear()


def closed_form_one_row(n: int) -> FactoredValue:
    """The closed form of det G_{1,(n-2)}, assembled factor by factor."""
    if n < 2:
        raise ValueError("needs n >= 2")
    q, r = QR, RR
    e_unit = (n - 1) * (3 * n - 4)
    assert e_unit % 2 == 0
    base = RationalFn(quantum_factorial((n - 2,) if n > 2 else ())) / (r * (q * q - 1))
    val = factorize(q) ** (e_unit // 2)
    val = val * factorize(base) ** (n * (n - 1) // 2)
    val = val * factorize(r - q) ** (n * (n - 3) // 2)
    val = val * factorize(r + q ** 3) ** ((n - 1) * (n - 2) // 2)
    val = val * factorize(r * r - q ** (6 - 2 * n)) ** (n - 1)
    val = val * factorize(r - q ** (3 - 2 * n))
    return val


def positive_rminus(v: FactoredValue) -> set:
    return {(a.eps, a.a) for a, e in v.rminus().items() if e > 0}


def dual_factor_check(n: int, f: int, lam) -> bool:
    """r - eps q^a divides det(f, lam) iff r + eps q^-a divides det(f, lam')."""
    lam = tuple(lam)
    mine = positive_rminus(gram_det_recursive(n, f, lam).value)
    dual = positive_rminus(gram_det_recursive(n, f, cb.conjugate(lam)).value)
    return {(-e, -a) for e, a in mine} == dual


def is_integral(v: FactoredValue) -> bool:
    """Integer coefficients after clearing monomials and powers of q^2-1."""
    if v.coeff.denominator != 1:
        return False
    for a, e in v.atoms.items():
        if e < 0 and not (getattr(a, "m", None) in (1, 2)):
            return False
    return True
