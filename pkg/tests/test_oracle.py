import math
from fractions import Fraction

import pytest

from refartin.conductor import conductor, qp_irreducibles_cyclic, transport_to_cyclic
from refartin.fixtures import (
    cyclotomic_tower_data,
    cyclotomic_tower_order,
    quad_order,
    real_cubic_order7,
)
from refartin.grouptheory import regular_character
from refartin.oracle import (
    OracleError,
    TameModel,
    build_monogenic_order,
    filtration_from_monogenic,
    oracle_monogenic_clin,
    oracle_tame_clin,
    phi_roots_mod_p,
    regular_action,
    tame_character_from_monogenic,
    valuation_monogenic,
)
from refartin.ramification import different_valuation, upper_jumps


# -- tame model -------------------------------------------------------------------


def test_tame_oracle_single_exponents():
    for n in range(1, 13):
        for i in range(n):
            assert oracle_tame_clin(n, [i]) == Fraction((n - i) % n, n)


def test_tame_oracle_trivial_action():
    for n in (1, 2, 5, 9):
        assert oracle_tame_clin(n, [0]) == 0


def test_tame_oracle_additive():
    assert oracle_tame_clin(6, [1, 4]) == oracle_tame_clin(6, [1]) + oracle_tame_clin(6, [4])
    assert oracle_tame_clin(4, [1, 2, 3]) == Fraction(3 + 2 + 1, 4)
    assert oracle_tame_clin(5, [2, 2]) == 2 * Fraction(3, 5)


def test_tame_model_rank_check():
    m = TameModel(4)
    assert len(m.invariant_basis([1, 3])) == 2


# -- monogenic model ----------------------------------------------------------------


def test_monogenic_validation():
    with pytest.raises(OracleError, match="Eisenstein"):
        build_monogenic_order(2, [-3, 0, 1], [[0, 1], [0, -1]])  # x^2 - 3 at p=2
    with pytest.raises(OracleError, match="Eisenstein"):
        build_monogenic_order(2, [-4, 0, 1], [[0, 1], [0, -1]])  # 4 divisible by p^2
    with pytest.raises(OracleError, match="automorphisms"):
        # x^3 - 7 at p=7 admits no integral cubic Galois action: wrong count
        build_monogenic_order(7, [-7, 0, 0, 1], [[0, 1]])
    with pytest.raises(OracleError, match="root of f"):
        build_monogenic_order(2, [-2, 0, 1], [[0, 1], [1, 1]])
    with pytest.raises(OracleError, match="not prime"):
        build_monogenic_order(4, [-4, 0, 1], [[0, 1], [0, -1]])


def test_quad_order_clin_values():
    o = quad_order()
    assert oracle_monogenic_clin(o, [[[1]], [[-1]]]) == Fraction(1, 2)
    assert oracle_monogenic_clin(o, regular_action(o.group)) == Fraction(3, 2)
    assert oracle_monogenic_clin(o, [[[1]], [[1]]]) == 0


def test_clin_is_not_an_isogeny_invariant():
    # the regular lattice and the sum of its characters are isogenous but
    # have different linear conductors
    o = quad_order()
    split = oracle_monogenic_clin(o, [[[1]], [[1]]]) + oracle_monogenic_clin(o, [[[1]], [[-1]]])
    assert split == Fraction(1, 2)
    assert oracle_monogenic_clin(o, regular_action(o.group)) == Fraction(3, 2) != split


def test_monogenic_representation_validation():
    o = quad_order()
    with pytest.raises(OracleError, match="identity"):
        oracle_monogenic_clin(o, [[[-1]], [[1]]])
    with pytest.raises(OracleError, match="representation"):
        oracle_monogenic_clin(o, [[[1]], [[2]]])


# -- valuations ------------------------------------------------------------------------


def test_valuation_examples():
    o = quad_order()
    assert valuation_monogenic(o, [0, 1]) == 1  # sqrt(2)
    assert valuation_monogenic(o, [2]) == 2
    assert valuation_monogenic(o, [1, 1]) == 0  # norm(1 + sqrt2) = -1
    assert valuation_monogenic(o, [0]) is math.inf


def test_resultants_match_sympy():
    sympy = pytest.importorskip("sympy")
    from refartin._poly import presultant

    x = sympy.symbols("x")
    cases = [
        ((-2, 0, 1), (0, 1)),
        ((7, 14, 7, 1), (0, 3, 1)),
        ((3, 3, 1), (-3, -2)),
        ((2, 2, 1), (Fraction(1, 2), 0, 3)),
    ]
    for f, g in cases:
        ours = presultant(tuple(Fraction(c) for c in f), tuple(Fraction(c) for c in g))
        pf = sum(sympy.Rational(c) * x**i for i, c in enumerate(f))
        pg = sum(sympy.Rational(c) * x**i for i, c in enumerate(g))
        assert sympy.Rational(ours) == sympy.resultant(pf, pg, x)


def test_different_via_derivative_matches_filtration_sum():
    # nu_L(f'(x)) equals the sum over i of (|Gamma_i| - 1)
    for order in [quad_order(), cyclotomic_tower_order(2, 2),
                  cyclotomic_tower_order(3, 2), real_cubic_order7()]:
        deriv = [i * c for i, c in enumerate(order.f)][1:]
        data = filtration_from_monogenic(order)
        assert valuation_monogenic(order, deriv) == different_valuation(data)


# -- filtration extraction ----------------------------------------------------------


def test_filtration_quad():
    data = filtration_from_monogenic(quad_order())
    assert [len(m) for m in data.filtration] == [2, 2, 2]
    assert data.n == 1 and data.p == 2


def test_filtration_cyclotomic_towers():
    d22 = cyclotomic_tower_data(2, 2)
    assert [len(m) for m in d22.filtration] == [2, 2]
    d31 = cyclotomic_tower_data(3, 1)
    assert [len(m) for m in d31.filtration] == [2]
    assert d31.n == 2
    d32 = cyclotomic_tower_data(3, 2)
    assert [len(m) for m in d32.filtration] == [6, 3, 3]
    # integer upper jumps (abelian over Q_p)
    for d in (d22, d31, d32):
        assert all(j.denominator == 1 for j in upper_jumps(d))


def test_filtration_tame_cubic():
    data = filtration_from_monogenic(real_cubic_order7())
    assert [len(m) for m in data.filtration] == [3]
    assert data.n == 3 and data.wild_order == 1


# -- tame characters -------------------------------------------------------------------


def test_tame_character_sqrt3_at_p3():
    o = build_monogenic_order(3, [-3, 0, 1], [[0, 1], [0, -1]])
    tc = tame_character_from_monogenic(o, 0)
    assert tc.n == 2 and tc.exponent == 1  # Psi(sigma) = -1, single prime
    assert len(phi_roots_mod_p(2, 3)) == 1


def test_tame_character_prime_choice_conjugacy():
    o = real_cubic_order7()
    assert phi_roots_mod_p(3, 7) == [2, 4]
    tc0 = tame_character_from_monogenic(o, 0)
    tc1 = tame_character_from_monogenic(o, 1)
    assert {tc0.exponent, tc1.exponent} == {1, 2}
    with pytest.raises(OracleError):
        tame_character_from_monogenic(o, 2)


def test_tame_character_errors():
    with pytest.raises(OracleError, match="trivial tame"):
        tame_character_from_monogenic(quad_order())


def test_prime_choice_invariance():
    # Q-rational characters: identical conductors for every prime choice;
    # sigma_p-stable irreducibles: the multiset of conductors is invariant
    o = real_cubic_order7()
    d0 = filtration_from_monogenic(o, 0)
    d1 = filtration_from_monogenic(o, 1)
    for chi_std in qp_irreducibles_cyclic(3, 0):
        assert conductor(d0, transport_to_cyclic(chi_std, d0.gamma)) == conductor(
            d1, transport_to_cyclic(chi_std, d1.gamma)
        )
    irr = qp_irreducibles_cyclic(3, 7)
    m0 = sorted(
        conductor(d0, transport_to_cyclic(ch, d0.gamma), on_unstable="ignore") for ch in irr
    )
    m1 = sorted(
        conductor(d1, transport_to_cyclic(ch, d1.gamma), on_unstable="ignore") for ch in irr
    )
    assert m0 == m1


# -- agreement between the oracle and the pairing route ----------------------------------


def test_regular_module_triple_agreement():
    for order in [quad_order(), cyclotomic_tower_order(2, 2),
                  cyclotomic_tower_order(3, 1), cyclotomic_tower_order(3, 2),
                  real_cubic_order7()]:
        data = filtration_from_monogenic(order)
        oracle_val = oracle_monogenic_clin(order, regular_action(order.group))
        pairing_val = conductor(data, regular_character(data.gamma))
        half_different = Fraction(different_valuation(data), 2)
        assert oracle_val == pairing_val == half_different


def test_tame_oracle_matches_pairing():
    from refartin.fixtures import tame_cyclic
    from refartin.ramification import power_character

    for n in range(1, 13):
        p = next(q for q in (2, 3, 5, 7, 11, 13) if n % q)
        t = tame_cyclic(n, p)
        for i in range(n):
            assert oracle_tame_clin(n, [i]) == conductor(
                t, power_character(n, (n - i) % n), on_unstable="ignore"
            )
