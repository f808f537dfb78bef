import random

import pytest

from heckecert.ring import IntMatrix, UsageError, charpoly
from heckecert.symbols import (IDENTITY, SIGMA, TAU, HomogPoly, Mat2, act,
                               build_space, cyc_sigma, cyc_tau,
                               eigenvalue_congruence, hecke_matrix,
                               hecke_on_poly, heilbronn_merel, involution)
from heckecert.qseries import delta, eisenstein

from conftest import dim_cusp_level1


def _random_poly(rng, w, bound=9):
    return HomogPoly(w, tuple(rng.randint(-bound, bound) for _ in range(w + 1)))


def _random_mat(rng, bound=4):
    return Mat2(*(rng.randint(-bound, bound) for _ in range(4)))


def test_act_examples():
    P = HomogPoly.monomial(2, 2)
    assert act(P, Mat2(1, 1, 0, 1)).coeffs == (1, 2, 1)      # (X+Y)^2
    assert act(P, IDENTITY).coeffs == P.coeffs
    assert act(P, TAU).coeffs == (1, 0, 0)                   # Y^2
    assert act(P, TAU * TAU).coeffs == (1, -2, 1)            # (Y-X)^2


def test_act_composition_law():
    rng = random.Random(2024)
    for _ in range(100):
        w = rng.choice([0, 2, 4, 6])
        P = _random_poly(rng, w)
        g, h = _random_mat(rng), _random_mat(rng)
        assert act(act(P, g), h).coeffs == act(P, g * h).coeffs


def test_sigma_tau_orders_on_even_degree():
    rng = random.Random(99)
    for _ in range(100):
        w = rng.choice([0, 2, 4, 8])
        P = _random_poly(rng, w)
        assert act(P, SIGMA * SIGMA).coeffs == P.coeffs
        assert act(P, TAU * TAU * TAU).coeffs == P.coeffs


def test_cyc_examples():
    one = HomogPoly.monomial(0, 0)
    assert cyc_tau(one).coeffs == (3,)
    assert cyc_sigma(one).coeffs == (2,)
    # odd i, even w: the sigma relation collapses to zero
    P = HomogPoly.monomial(1, 2)
    assert cyc_sigma(P).coeffs == (0, 0, 0)
    P2 = HomogPoly.monomial(2, 2)
    assert cyc_tau(P2).coeffs == (2, -2, 2)


def test_cyc_base_change_identity():
    rng = random.Random(5)
    for _ in range(50):
        w = rng.choice([2, 4, 6])
        P = _random_poly(rng, w)
        g = _random_mat(rng)
        assert cyc_tau(P, g).coeffs == cyc_tau(act(P, g)).coeffs
        assert cyc_sigma(P, g).coeffs == cyc_sigma(act(P, g)).coeffs


def test_heilbronn_merel_small():
    assert [M.entries() for M in heilbronn_merel(1)] == [(1, 0, 0, 1)]
    hm2 = {M.entries() for M in heilbronn_merel(2)}
    assert hm2 == {(2, 0, 0, 1), (1, 0, 0, 2), (2, 1, 0, 1), (1, 0, 1, 2)}


def test_heilbronn_merel_exhaustive_oracle():
    for n in (2, 3, 4, 5, 6, 7):
        expected = set()
        for a in range(1, 3 * n + 2):
            for b in range(0, a):
                for c in range(0, 3 * n + 2):
                    for d in range(c + 1, 3 * n + 2):
                        if a * d - b * c == n:
                            expected.add((a, b, c, d))
        got = {M.entries() for M in heilbronn_merel(n)}
        assert got == expected
        for (a, b, c, d) in got:
            assert a > b >= 0 and d > c >= 0 and a * d - b * c == n
    # deterministic lexicographic order
    ents = [M.entries() for M in heilbronn_merel(3)]
    assert ents == sorted(ents)


def test_hecke_on_poly_degree_zero():
    one = HomogPoly.monomial(0, 0)
    assert hecke_on_poly(2, one).coeffs == (4,)  # |HM_2| = 4


def test_hecke_t2_matches_displayed_expansion_mod3():
    # T_2(X^i Y^(w-i)) agrees mod 3 with the four-term substitution form
    i, w = 3, 10
    P = HomogPoly.monomial(i, w)
    lhs = hecke_on_poly(2, P)
    rhs = (act(P, Mat2(-1, 0, 0, 1)) + act(P, Mat2(1, 0, 0, -1))
           + act(P, Mat2(-1, 1, 0, 1)) + act(P, Mat2(1, 0, 1, -1)))
    assert (lhs - rhs).reduce_mod(3).is_zero()


def test_hecke_additivity():
    rng = random.Random(31)
    for _ in range(30):
        w = rng.choice([2, 4, 6])
        P, Q = _random_poly(rng, w), _random_poly(rng, w)
        left = hecke_on_poly(3, P + Q)
        right = hecke_on_poly(3, P) + hecke_on_poly(3, Q)
        assert left.coeffs == right.coeffs
        assert hecke_on_poly(3, P.scale(5)).coeffs == hecke_on_poly(3, P).scale(5).coeffs


def test_hecke_multiplicativity_in_quotient():
    space = build_space(10)
    P = HomogPoly.monomial(4, 10)
    t6 = space.project_poly(hecke_on_poly(6, P))
    t23 = space.project_poly(hecke_on_poly(2, hecke_on_poly(3, P)))
    assert t6 == t23


def test_build_space_ranks():
    for w in range(0, 32, 2):
        space = build_space(w)
        assert space.rank_splus == dim_cusp_level1(w + 2), w


def test_build_space_rejects_odd():
    with pytest.raises(UsageError):
        build_space(3)


def test_involution_examples():
    w = 6
    assert involution(HomogPoly.monomial(w, w)).coeffs == \
        HomogPoly.monomial(0, w, -1).coeffs
    gen = HomogPoly.monomial(2, 6) - HomogPoly.monomial(4, 6)
    assert involution(gen).coeffs == gen.coeffs
    rng = random.Random(4)
    for _ in range(100):
        P = _random_poly(rng, rng.choice([2, 4, 8]))
        assert involution(involution(P)).coeffs == P.coeffs


def test_hecke_matrix_weight_12():
    space = build_space(10)
    assert hecke_matrix(space, 2).rows == [[-24]]
    assert hecke_matrix(space, 3).rows == [[252]]


def test_hecke_matrices_commute_weight_24():
    space = build_space(22)
    A2, A3 = hecke_matrix(space, 2), hecke_matrix(space, 3)
    assert A2.nrows == 2
    assert (A2 * A3).rows == (A3 * A2).rows


def test_hecke_matrix_commutes_weight_up_to_32():
    for w in range(10, 32, 2):
        space = build_space(w)
        if space.rank_splus == 0:
            continue
        A2, A3 = hecke_matrix(space, 2), hecke_matrix(space, 3)
        assert (A2 * A3).rows == (A3 * A2).rows


def test_rank_one_eigenvalues_match_qexpansions():
    # cross-module oracle: for rank-1 weights the Hecke matrix entry is
    # the q-expansion eigenvalue of the E4^a E6^b Delta normalization
    N = 8
    e4 = eisenstein(4, N).map_int()
    e6 = eisenstein(6, N).map_int()
    dl = delta(N)
    for w in range(0, 32, 2):
        space = build_space(w)
        if space.rank_splus != 1:
            continue
        k = w + 2
        rest = k - 12
        for b in (0, 1):
            if (rest - 6 * b) >= 0 and (rest - 6 * b) % 4 == 0:
                a = (rest - 6 * b) // 4
                break
        f = e4.pow(a) * e6.pow(b) * dl
        for n in (2, 3, 5, 7):
            assert hecke_matrix(space, n).rows == [[f[n]]], (w, n)


def test_eigenvalue_congruence_examples():
    sp10 = build_space(10)
    assert eigenvalue_congruence(sp10, 3, 1 + 3 ** 11, 2, 7)
    assert eigenvalue_congruence(sp10, 2, 0, 3, 1)
    assert eigenvalue_congruence(sp10, 7, 5, 3, 2)
    assert not eigenvalue_congruence(sp10, 7, 4, 3, 2)


def test_eigenvalue_congruence_empty_space():
    with pytest.raises(UsageError):
        eigenvalue_congruence(build_space(0), 2, 0, 2, 3)
