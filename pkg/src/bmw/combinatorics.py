"""Partitions, cell labels, up-down tableaux and their contents.

Partitions are tuples of positive ints (the empty tuple is the empty
partition), nodes are (row, col) pairs counted from 1, and an up-down
tableau is the tuple of shapes (t_0, ..., t_n) with t_0 = ().
"""
from __future__ import annotations

from functools import lru_cache
from math import factorial, prod
from typing import NamedTuple

from .laurent import LaurentPoly

Partition = tuple
Tableau = tuple


class CellLabel(NamedTuple):
    f: int
    lam: Partition


class Content(NamedTuple):
    """The monomial r^e_r q^e_q of a Jucys-Murphy eigenvalue."""
    e_r: int
    e_q: int

    def poly(self) -> LaurentPoly:
        return LaurentPoly.monomial(1, self.e_q, self.e_r)

    def inverse(self) -> "Content":
        return Content(-self.e_r, -self.e_q)

    def __str__(self):
        return self.poly().to_string()


# ---------------------------------------------------------------------------
# partitions


@lru_cache(maxsize=None)
def partitions(m: int, largest: int | None = None) -> tuple:
    """Partitions of m in lexicographically decreasing order."""
    if largest is None:
        largest = m
    if m == 0:
        return ((),)
    out = []
    for p in range(min(m, largest), 0, -1):
        for rest in partitions(m - p, p):
            out.append((p,) + rest)
    return tuple(out)


def is_partition(lam) -> bool:
    return all(isinstance(x, int) and x > 0 for x in lam) and all(
        lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def dominates(a: Partition, b: Partition) -> bool:
    """a dominates b (same size)."""
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa < sb:
            return False
    return True


def addable(lam: Partition) -> list[tuple[int, int]]:
    out = []
    for i in range(len(lam) + 1):
        li = lam[i] if i < len(lam) else 0
        if i == 0 or lam[i - 1] > li:
            out.append((i + 1, li + 1))
    return out


def removable(lam: Partition) -> list[tuple[int, int]]:
    out = []
    for i, li in enumerate(lam):
        nxt = lam[i + 1] if i + 1 < len(lam) else 0
        if li > nxt:
            out.append((i + 1, li))
    return out


def add_node(lam: Partition, p) -> Partition:
    row = p[0] - 1
    parts = list(lam)
    if row == len(parts):
        parts.append(1)
    else:
        parts[row] += 1
    return tuple(parts)


def remove_node(lam: Partition, p) -> Partition:
    parts = list(lam)
    parts[p[0] - 1] -= 1
    return tuple(x for x in parts if x)


def node_content(lam: Partition, p, kind: str) -> int:
    """c_lam(p): j - i for an addable node, i - j for a removable one."""
    i, j = p
    if kind == "addable":
        if p not in addable(lam):
            raise ValueError(f"{p} is not an addable node of {lam}")
        return j - i
    if kind == "removable":
        if p not in removable(lam):
            raise ValueError(f"{p} is not a removable node of {lam}")
        return i - j
    raise ValueError(f"unknown node kind {kind!r}")


@lru_cache(maxsize=None)
def neighbours(lam: Partition) -> tuple:
    """Shapes one step away: removals first, then additions, by row."""
    rem = [remove_node(lam, p) for p in removable(lam)]
    add = [add_node(lam, p) for p in addable(lam)]
    return tuple(rem + add)


def step(a: Partition, b: Partition):
    """The node and direction (+1 add, -1 remove) taking a to b."""
    if sum(b) == sum(a) + 1:
        for p in addable(a):
            if add_node(a, p) == b:
                return p, 1
    elif sum(b) == sum(a) - 1:
        for p in removable(a):
            if remove_node(a, p) == b:
                return p, -1
    raise ValueError(f"{a} -> {b} is not a single step")


def step_content(a: Partition, b: Partition) -> Content:
    (i, j), s = step(a, b)
    if s > 0:
        return Content(1, 2 * (j - i))
    return Content(-1, 2 * (i - j))


def hook_product(lam: Partition) -> int:
    conj = conjugate(lam)
    return prod(lam[i] + conj[j] - i - j - 1 for i in range(len(lam)) for j in range(lam[i]))


def double_factorial(m: int) -> int:
    return prod(range(m, 0, -2)) if m > 0 else 1


# ---------------------------------------------------------------------------
# cells


def cell_labels(n: int) -> list[CellLabel]:
    """All (f, lam) with lam |- n-2f, ascending: f first, then partitions in
    increasing lexicographic order (which refines dominance)."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for f in range(n // 2 + 1):
        for lam in reversed(partitions(n - 2 * f)):
            out.append(CellLabel(f, lam))
    return out


def cell_leq(a: CellLabel, b: CellLabel) -> bool:
    if a.f != b.f:
        return a.f < b.f
    return dominates(b.lam, a.lam)


def _check_cell(n, f, lam):
    lam = tuple(lam)
    if not is_partition(lam) or f < 0 or sum(lam) + 2 * f != n:
        raise ValueError(f"({f}, {lam}) is not a cell label for n={n}")
    return lam


def cell_dim(n: int, f: int, lam: Partition) -> int:
    lam = _check_cell(n, f, lam)
    num = factorial(n) * double_factorial(2 * f - 1)
    den = factorial(2 * f) * hook_product(lam)
    assert num % den == 0
    return num // den


def _distance(a: Partition, b: Partition) -> int:
    la = {(i, j) for i, x in enumerate(a) for j in range(x)}
    lb = {(i, j) for i, x in enumerate(b) for j in range(x)}
    return len(la ^ lb)


@lru_cache(maxsize=None)
def enum_updown(n: int, f: int, lam: Partition) -> tuple:
    """Up-down tableaux of shape lam and length n, depth first with children
    ordered removals before additions, then by row."""
    lam = _check_cell(n, f, lam)
    out = []

    def rec(path):
        i = len(path) - 1
        if i == n:
            out.append(tuple(path))
            return
        for nb in neighbours(path[-1]):
            if _distance(nb, lam) <= n - i - 1:
                path.append(nb)
                rec(path)
                path.pop()

    rec([()])
    return tuple(out)


def is_updown(t) -> bool:
    if not t or t[0] != ():
        return False
    try:
        for a, b in zip(t, t[1:]):
            step(a, b)
    except ValueError:
        return False
    return True


def contents(t: Tableau) -> tuple:
    return tuple(step_content(t[k - 1], t[k]) for k in range(1, len(t)))


def content_at(t: Tableau, k: int) -> Content:
    return step_content(t[k - 1], t[k])


def t_lambda(n: int, f: int, lam: Partition) -> Tableau:
    """f hops to (1) and back, then lam filled row by row."""
    lam = _check_cell(n, f, lam)
    path = [()]
    for _ in range(f):
        path += [(1,), ()]
    cur = ()
    for i, part in enumerate(lam):
        for j in range(part):
            cur = add_node(cur, (i + 1, j + 1))
            path.append(cur)
    return tuple(path)


def sim_class(t: Tableau, k: int) -> list:
    """All s agreeing with t off position k (t itself included)."""
    n = len(t) - 1
    if not 1 <= k <= n - 1:
        raise ValueError("k must lie in 1..n-1")
    a, b = t[k - 1], t[k + 1]
    out = []
    for x in neighbours(a):
        if x == t[k] or b in neighbours(x):
            out.append(t[:k] + (x,) + t[k + 1:])
    return out


def apply_s(t: Tableau, k: int):
    """t s_k: the tableau with the contents at k, k+1 swapped, or None."""
    if t[k - 1] == t[k + 1]:
        raise ValueError("t s_k needs t_{k-1} != t_{k+1}")
    ck, ck1 = content_at(t, k), content_at(t, k + 1)
    for s in sim_class(t, k):
        if s != t and content_at(s, k) == ck1 and content_at(s, k + 1) == ck:
            return s
    return None


def branching_predecessors(n: int, f: int, lam: Partition) -> list[CellLabel]:
    """(l, mu) in Lambda_{n-1} with (l, mu) -> (f, lam)."""
    lam = _check_cell(n, f, lam)
    out = []
    for p in removable(lam):
        out.append(CellLabel(f, remove_node(lam, p)))
    if f >= 1:
        for p in addable(lam):
            out.append(CellLabel(f - 1, add_node(lam, p)))
    return out


def step_lower(x: Partition, y: Partition) -> bool:
    """x strictly below y in the cell order of the intermediate shapes
    (fewer boxes means more arcs, hence higher)."""
    if x == y:
        return False
    if sum(x) != sum(y):
        return sum(x) > sum(y)
    return dominates(y, x)


def tableau_lower(s: Tableau, t: Tableau) -> bool:
    """s strictly below t, for tableaux differing in one position."""
    diff = [i for i in range(len(t)) if s[i] != t[i]]
    if len(diff) != 1:
        raise ValueError("tableaux must differ in exactly one position")
    i = diff[0]
    return step_lower(s[i], t[i])


def format_partition(lam: Partition) -> str:
    return ",".join(str(x) for x in lam)


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "∅"):
        return ()
    lam = tuple(int(x) for x in text.split(","))
    if not is_partition(lam):
        raise ValueError(f"{text!r} is not a partition")
    return lam


def format_tableau(t: Tableau) -> str:
    return "|".join(format_partition(x) or "∅" for x in t)


def parse_tableau(text: str) -> Tableau:
    return tuple(parse_partition(x) for x in text.split("|"))
