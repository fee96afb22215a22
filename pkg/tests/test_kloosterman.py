"""Hyper-Kloosterman sums: direct grid vs Gauss-sum factorization."""
from fractions import Fraction

import numpy as np
import pytest

from epsilonlab.characters import MultChar, chars_with_conductor, trivial_char
from epsilonlab.kloosterman import (
    BudgetError,
    GaussTable,
    KLQuery,
    build_gauss_table,
    dft_term_count,
    direct_term_count,
    kl_direct,
    kl_result_json,
    kl_via_dft,
)
from epsilonlab.padic import unit_group
from epsilonlab.scalars import (
    EXACT,
    FLOAT,
    CycNumber,
    conjugate,
    root_of_unity,
    to_complex,
)


def classical_kloosterman(p, t, y):
    """S(y, 1; p^t) written as its own two-line program: the n = 2 oracle."""
    pt = p ** t
    acc = CycNumber.zero()
    for x in range(1, pt):
        if x % p == 0:
            continue
        acc = acc + root_of_unity((x + y * pow(x, -1, pt)) % pt, pt)
    return acc


def units_mod(p, t):
    return [int(u) for u in unit_group(p, t).units()]


# ---------------------------------------------------------------------------
# the direct engine
# ---------------------------------------------------------------------------


def test_frozen_classical_value():
    # S(1,1;5) = 2 + zeta_5^2 + zeta_5^3
    q = KLQuery(trivial_char(5), 2, 1, 1)
    got = kl_direct(q)
    want = CycNumber.rational(2) + root_of_unity(2, 5) + root_of_unity(3, 5)
    assert got == want
    assert abs(got.to_complex() - 0.3819660112501051) < 1e-12
    assert abs(kl_direct(q, backend=FLOAT) - 0.3819660112501051) < 1e-12


@pytest.mark.parametrize("p,t", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2)])
def test_direct_matches_independent_n2_oracle(p, t):
    for y in units_mod(p, t):
        q = KLQuery(trivial_char(p), 2, y, t)
        assert kl_direct(q) == classical_kloosterman(p, t, y)


def test_argument_reduction():
    # the sum only sees y mod p^t
    p, t = 5, 2
    a = KLQuery(trivial_char(p), 3, 7, t)
    b = KLQuery(trivial_char(p), 3, 7 + p ** t, t)
    assert a.y == b.y == 7
    assert kl_direct(a) == kl_direct(b)


def test_query_validation():
    with pytest.raises(ValueError):
        KLQuery(trivial_char(5), 1, 1, 1)  # no summation variables
    with pytest.raises(ValueError):
        KLQuery(trivial_char(5), 2, 10, 1)  # y not a unit
    with pytest.raises(ValueError):
        KLQuery(trivial_char(5), 2, 1, 0)  # level must be positive
    with pytest.raises(ValueError):
        KLQuery(MultChar(5, 2, 1), 2, 1, 1)  # twist conductor exceeds level


def test_twist_presentation_invariance():
    # the same omega presented at a deeper level gives the same sum
    om1 = MultChar(5, 1, 1)
    om3 = om1.induce(3)
    q1 = KLQuery(om1, 2, 3, 2)
    q3 = KLQuery(om3, 2, 3, 2)
    assert kl_direct(q1) == kl_direct(q3)
    assert kl_via_dft(q1) == kl_via_dft(q3)


def test_term_budget():
    q = KLQuery(trivial_char(7), 4, 1, 2)
    with pytest.raises(BudgetError):
        kl_direct(q, term_budget=1000)
    assert direct_term_count(q) == 42 ** 3
    assert dft_term_count(q) == 42  # post-table cost is linear, not cubic


# ---------------------------------------------------------------------------
# the Gauss-sum table
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("p,t", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)])
def test_table_methods_agree_exactly(p, t):
    naive = build_gauss_table(p, t, method="naive")
    dft = build_gauss_table(p, t, method="dft")
    assert naive.values == dft.values


def test_table_degenerate_entries():
    # level 1: trivial character gives the Ramanujan value -1
    t1 = build_gauss_table(5, 1)
    assert t1.value(trivial_char(5)) == CycNumber.rational(-1)
    # level 2: every character of conductor < 2 contributes 0
    t2 = build_gauss_table(5, 2)
    m = t2.order
    zeros = 0
    for k in range(m):
        chi = MultChar(5, 2, k)
        v = t2.values[k]
        if chi.conductor_exponent < 2:
            assert v.is_zero()
            zeros += 1
        else:
            assert v * conjugate(v) == CycNumber.rational(25)
    assert zeros == 4  # phi(5) characters factor through level 1


@pytest.mark.parametrize("p,t", [(3, 2), (5, 2), (7, 1)])
def test_table_pairing_invariant(p, t):
    assert build_gauss_table(p, t).pairing_holds()
    assert build_gauss_table(p, t, backend=FLOAT).pairing_holds()


def test_table_float_agrees_with_exact():
    ex = build_gauss_table(5, 2)
    fl = build_gauss_table(5, 2, backend=FLOAT)
    for k in range(ex.order):
        assert abs(to_complex(ex.values[k]) - fl.values[k]) < 1e-9


def test_table_budget_and_lookup_errors():
    with pytest.raises(BudgetError):
        build_gauss_table(5, 2, budget=10)
    table = build_gauss_table(5, 1)
    with pytest.raises(ValueError):
        table.value(MultChar(5, 2, 1))  # conductor 2 does not factor through level 1
    with pytest.raises(ValueError):
        kl_via_dft(KLQuery(trivial_char(5), 2, 1, 2), table=table)


# ---------------------------------------------------------------------------
# cross-algorithm equality
# ---------------------------------------------------------------------------


def level_chars(p, t):
    m = unit_group(p, t).order
    return [MultChar(p, t, k) for k in range(m)]


@pytest.mark.parametrize(
    "p,t,ns,omegas",
    [
        (3, 1, (2, 3, 4), "all"),
        (5, 1, (2, 3), "all"),
        (7, 1, (2, 3), "some"),
        (3, 2, (2, 3), "some"),
        (5, 2, (2,), "some"),
    ],
)
def test_cross_algorithm(p, t, ns, omegas):
    table = build_gauss_table(p, t)
    oms = level_chars(p, t) if omegas == "all" else [
        trivial_char(p), MultChar(p, t, 1), MultChar(p, t, 2)]
    for n in ns:
        for om in oms:
            for y in units_mod(p, t):
                q = KLQuery(om, n, y, t)
                assert kl_direct(q) == kl_via_dft(q, table), (p, t, n, om, y)


def test_cross_algorithm_float():
    p, t = 5, 1
    table = build_gauss_table(p, t, backend=FLOAT)
    for y in units_mod(p, t):
        q = KLQuery(MultChar(p, 1, 1), 3, y, t)
        direct = kl_direct(q, backend=FLOAT)
        dft = kl_via_dft(q, table, backend=FLOAT)
        exact = to_complex(kl_direct(q))
        assert abs(direct - exact) < 1e-9
        assert abs(dft - exact) < 1e-9


# ---------------------------------------------------------------------------
# structural identities
# ---------------------------------------------------------------------------


def test_conjugation_symmetry():
    # conj(KL_{omega,n}(y)) = omega(-1) * KL_{omega^{-1},n}((-1)^n y)
    p, t = 5, 1
    pt = p ** t
    for n in (2, 3):
        for om in level_chars(p, t):
            par = om.eval(-1 % pt)
            for y in units_mod(p, t):
                lhs = conjugate(kl_direct(KLQuery(om, n, y, t)))
                rhs = par * kl_direct(KLQuery(om.inv(), n, (-1) ** n * y % pt, t))
                assert lhs == rhs, (n, om, y)


def test_orthogonality_reconstruction():
    # sum_y chi^{-1}(y) KL_{omega,n}(y;t) recovers tau_t(omega chi) tau_t(chi)^{n-1}
    p, t, n = 3, 1, 3
    table = build_gauss_table(p, t)
    for om in level_chars(p, t):
        kls = {y: kl_direct(KLQuery(om, n, y, t)) for y in units_mod(p, t)}
        for chi in level_chars(p, t):
            acc = CycNumber.zero()
            for y, v in kls.items():
                acc = acc + chi.inv().eval(y) * v
            want = table.value(om.mul(chi)) * table.value(chi) * table.value(chi)
            assert acc == want, (om, chi)


def test_result_json_shape():
    q = KLQuery(MultChar(5, 1, 1), 2, 3, 1)
    out = kl_result_json(q, kl_direct(q), "direct")
    assert out["p"] == 5 and out["t"] == 1 and out["n"] == 2 and out["y"] == 3
    assert out["omega"] == {"level": 1, "k": 1}
    assert out["algorithm"] == "direct"
    assert isinstance(out["value_complex"], list) and len(out["value_complex"]) == 2
    assert isinstance(out["value_exact_repr"], str)
    out_f = kl_result_json(q, kl_direct(q, backend=FLOAT), "direct")
    assert out_f["value_exact_repr"] is None
