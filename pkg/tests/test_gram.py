from fractions import Fraction

import pytest

from bmw import combinatorics as cb
from bmw import gram
from bmw.factored import FactoredValue, RMinus, factorize
from bmw.laurent import quantum_factorial, quantum_int
from bmw.rational import QR, RR, RationalFn, delta_param, omega

q, r = QR, RR


def qi(m):
    return RationalFn(quantum_int(m))


def qf(lam):
    return RationalFn(quantum_factorial(tuple(lam)))



# -- E_tt -------------------------------------------------------------------


def test_ett_single_arc_is_delta():
    assert gram.e_tt(((), (1,), ()), 1) == delta_param()
    assert delta_param() == 1 + (r - r.inverse()) / omega()


def test_ett_precondition():
    t = ((), (1,), (2,), (1,), ())
    with pytest.raises(ValueError):
        gram.e_tt(t, 3)
    with pytest.raises(ValueError):
        gram.e_tt(t, 4)


@pytest.mark.parametrize("n", range(2, 6))
def test_ett_trace_law(n):
    d = delta_param()
    seen = set()
    for f, lam in cb.cell_labels(n):
        for t in cb.enum_updown(n, f, lam):
            for k in range(1, n):
                if t[k - 1] != t[k + 1] or (t[:k], t[k + 1:]) in seen:
                    continue
                seen.add((t[:k], t[k + 1:]))
                total = RationalFn(0)
                for u in cb.sim_class(t, k):
                    total = total + gram.e_tt(u, k)
                assert total == d


# -- branching scalars -------------------------------------------------------


def test_gamma_add_examples():
    assert gram.gamma_add((1,), (1, 1)) == 1
    assert gram.gamma_add((2,), (1, 2)) == qi(2)
    with pytest.raises(ValueError):
        gram.gamma_add((2,), (1, 1))


def test_gamma_add_one_column_consistent_with_base_norm():
    # the chain for t^(1,1) must give [1,1]! = 1
    t = cb.t_lambda(2, 0, (1, 1))
    assert gram.norm_of(t) == qf((1, 1)) == 1
    assert gram.gamma_add((1, 1), (2, 1)) == 1


def test_gamma_remove_examples():
    assert gram.gamma_remove((1,), (2,)) == (
        q ** 3 * (r - q ** -3) * (r * r - 1) / (r * (q * q - 1) * (r - q.inverse())))
    assert gram.gamma_remove((), (1,)) == delta_param()
    assert gram.gamma_remove((1,), (1, 1)) == (
        q * (r + q ** 3) * (r * r - 1) / (qi(2) * r * (q * q - 1) * (r + q)))
    with pytest.raises(ValueError):
        gram.gamma_remove((1,), (3,))


@pytest.mark.parametrize("k", range(4, 8))
def test_gamma_pair_product(k):
    lam = (k - 2,)
    got = gram.gamma(lam, (k - 1,)) * gram.gamma(lam, (k - 2, 1))
    want = (q ** (2 * k - 2) * qi(k - 2) * (r - q) * (r + q ** 3) * (r * r - q ** (6 - 2 * k)) ** 2
            * (r - q ** (3 - 2 * k))) / (
        r * r * (q * q - 1) ** 2 * qi(k - 1) * (r * r - q ** (8 - 2 * k)) * (r - q ** (5 - 2 * k)))
    assert got == want


# -- norms ------------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 7))
def test_base_norms(n):
    for f, lam in cb.cell_labels(n):
        t = cb.t_lambda(n, f, lam)
        assert gram.norm_of(t) == gram.base_norm(n, f, lam) == delta_param() ** f * qf(lam)


@pytest.mark.parametrize("n", range(1, 6))
def test_norms_nonzero(n):
    for f, lam in cb.cell_labels(n):
        for t in cb.enum_updown(n, f, lam):
            assert not gram.norm_of(t).is_zero()


def _s_tableau(n, k, j):
    steps = []
    for i in range(n + 1):
        if j == 2:
            p = (i,) if i <= k - 1 else (i - 2,)
        else:
            p = (i,) if i <= j - 2 else ((i - 1, 1) if i <= k - 1 else (i - 2,))
        steps.append(tuple(x for x in p if x))
    return tuple(steps)


@pytest.mark.parametrize("n", range(3, 7))
def test_one_row_norm_formulas(n):
    fact = qf((n - 2,))
    tabs = set(cb.enum_updown(n, 1, (n - 2,)))
    assert tabs == {_s_tableau(n, k, j) for k in range(2, n + 1) for j in range(2, k + 1)}
    assert gram.norm_of(_s_tableau(n, 2, 2)) == delta_param() * fact
    for k in range(3, n + 1):
        want = (q ** 3 * fact / (r * (q * q - 1)) * (r - q ** (3 - 2 * k)) / (r - q ** (5 - 2 * k))
                * (r * r * q ** (2 * k - 6) - 1) * qi(k - 1))
        assert gram.norm_of(_s_tableau(n, k, 2)) == want
        for j in range(3, k + 1):
            want = (q / r * fact / (q * q - 1) * (r - q) * (r + q ** 3) * qi(j - 2) / qi(j - 1)
                    * (r * r - q ** (6 - 2 * k)) / (r * r - q ** (8 - 2 * k)))
            assert gram.norm_of(_s_tableau(n, k, j)) == want


@pytest.mark.parametrize("n", range(3, 6))
def test_norm_step_property(n):
    count = 0
    for f, lam in cb.cell_labels(n):
        for t in cb.enum_updown(n, f, lam):
            for k in range(1, n):
                if t[k - 1] == t[k + 1]:
                    continue
                s = cb.apply_s(t, k)
                if s is None or not cb.tableau_lower(s, t):
                    continue
                ratio = gram.norm_step_check(t, k)
                assert gram.norm_of(s) == ratio * gram.norm_of(t)
                count += 1
    assert count > 0


def test_norm_step_ratio_explicit_and_symmetric():
    t = ((), (1,), (2,), (2, 1))          # steps at k = 2, 3 have contents r q^2, r q^-2
    ratio = gram.norm_step_check(t, 2)
    x, y = r * q ** 2, r * q ** -2
    w = omega()
    assert ratio == 1 - w * w * x * y / ((y - x) * (y - x))
    assert ratio == 1 - w * w * y * x / ((x - y) * (x - y))


def test_norm_step_preconditions():
    with pytest.raises(ValueError):
        gram.norm_step_check(((), (1,), ()), 1)
    with pytest.raises(ValueError):
        gram.norm_step_check(((), (1,), (2,)), 1)          # no t s_k
    with pytest.raises(ValueError):
        gram.norm_step_check(((), (1,), (1, 1), (2, 1)), 2)  # t s_k lies above


# -- determinants -----------------------------------------------------------


def test_small_determinants():
    assert gram.gram_det_direct(2, 1, ()).value.expand() == delta_param()
    assert gram.gram_det_direct(2, 0, (2,)).value.expand() == qi(2)
    want = q ** 5 * (r * (q * q - 1)) ** -3 * (r + q ** 3) * (r * r - 1) ** 2 * (r - q ** -3)
    assert gram.gram_det_direct(3, 1, (1,)).value.expand() == want


@pytest.mark.parametrize("n", range(1, 6))
def test_two_routes_agree(n):
    for f, lam in cb.cell_labels(n):
        a = gram.gram_det_direct(n, f, lam)
        b = gram.gram_det_recursive(n, f, lam)
        assert a.dim == b.dim == cb.cell_dim(n, f, lam)
        assert a.value == b.value


@pytest.mark.parametrize("n", range(2, 7))
def test_closed_form_one_row(n):
    lam = (n - 2,) if n > 2 else ()
    assert gram.gram_det_recursive(n, 1, lam).value == gram.closed_form_one_row(n)


def test_closed_form_expands_like_the_display():
    n = 4
    want = (q ** ((n - 1) * (3 * n - 4) // 2) * (qf((n - 2,)) / (r * (q * q - 1))) ** (n * (n - 1) // 2)
            * (r - q) ** (n * (n - 3) // 2) * (r + q ** 3) ** ((n - 1) * (n - 2) // 2)
            * (r * r - q ** (6 - 2 * n)) ** (n - 1) * (r - q ** (3 - 2 * n)))
    assert gram.closed_form_one_row(n).expand() == want


@pytest.mark.parametrize("n", range(3, 7))
def test_one_column_factor_pattern(n):
    row = gram.positive_rminus(gram.gram_det_recursive(n, 1, (n - 2,)).value)
    col = gram.positive_rminus(gram.gram_det_recursive(n, 1, (1,) * (n - 2)).value)
    assert col == {(-e, -a) for e, a in row}


@pytest.mark.parametrize("n", range(2, 6))
def test_duality(n):
    for f, lam in cb.cell_labels(n):
        assert gram.dual_factor_check(n, f, lam)


def test_duality_examples():
    atoms = gram.positive_rminus(gram.gram_det_recursive(3, 0, (2, 1)).value)
    assert atoms == {(-e, -a) for e, a in atoms}
    assert not gram.positive_rminus(gram.gram_det_recursive(2, 0, (2,)).value)
    assert not gram.positive_rminus(gram.gram_det_recursive(2, 0, (1, 1)).value)


@pytest.mark.parametrize("n", range(1, 6))
def test_integrality(n):
    for f, lam in cb.cell_labels(n):
        v = gram.gram_det_recursive(n, f, lam).value
        assert gram.is_integral(v), (n, f, lam, v)


def test_integrality_detects_bad_denominators():
    assert not gram.is_integral(factorize(RationalFn(1) / (r - q)))
    assert not gram.is_integral(FactoredValue(Fraction(1, 2)))


def test_recursive_store_is_used():
    gram.clear_memo()
    store = {}
    gram.gram_det_recursive(4, 1, (2,), store)
    assert (3, 1, (1,)) in store and (4, 1, (2,)) in store
    gram.clear_memo()
    marker = FactoredValue(7)
    store[(4, 1, (2,))] = marker
    assert gram.gram_det_recursive(4, 1, (2,), store).value == marker
    gram.clear_memo()


def test_record_json_roundtrip():
    d = gram.gram_det_recursive(4, 1, (2,))
    rec = d.to_json()
    assert rec["lambda"] == "2" and rec["dim"] == 6
    assert set(rec) == {"n", "f", "lambda", "dim", "unit", "factors"}
    assert gram.GramDeterminant.from_json(rec).value == d.value


def test_one_row_scan_matches_display():
    for n in range(4, 7):
        atoms = gram.positive_rminus(gram.gram_det_recursive(n, 1, (n - 2,)).value)
        want = {(1, 1), (-1, 3), (1, 3 - n), (-1, 3 - n), (1, 3 - 2 * n)}
        assert atoms == want
    assert RMinus(1, 1) in gram.gram_det_recursive(4, 1, (2,)).value.rminus()


@pytest.mark.parametrize("n, f", [(7, 1), (9, 2)])
def test_three_two_vanishes_when_delta_does(n, f):
    v = gram.gram_det_recursive(n, f, (3, 2)).value
    assert v.subs_r(1, -1).is_zero() and v.subs_r(-1, 1).is_zero()
    assert not v.is_zero()


def test_degenerate_values_respect_conjugation():
    # r = -q on lam pairs with r = q^-1 on lam': the specialised values share their sign
    for lam in [(3,), (1, 1, 1), (2, 1)]:
        a = gram.gram_det_recursive(5, 1, lam).value.subs_r(-1, 1)
        b = gram.gram_det_recursive(5, 1, cb.conjugate(lam)).value.subs_r(1, -1)
        assert (a.coeff > 0) == (b.coeff > 0)
