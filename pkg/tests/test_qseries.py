import random
from fractions import Fraction

import pytest

from heckecert.qseries import (GradedBasis, QSeries, bernoulli, d_series,
                               delta, eisenstein, ek_congruence_check,
                               gamma0_2_basis, hecke_qexp, level1_basis,
                               sigma_power, sturm_bound, u_op, v_op,
                               victor_miller)
from heckecert.ring import UsageError


def test_sigma_power():
    assert sigma_power(3, 1) == 1
    assert sigma_power(3, 2) == 9
    assert sigma_power(1, 6) == 12
    # divisor-scan oracle
    rng = random.Random(1)
    for _ in range(50):
        k, n = rng.randint(0, 6), rng.randint(1, 60)
        assert sigma_power(k, n) == sum(d ** k for d in range(1, n + 1)
                                        if n % d == 0)


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(3) == 0


def test_eisenstein_series():
    e4 = eisenstein(4, 3)
    assert e4.coeffs == (1, 240, 2160, 6720)
    e6 = eisenstein(6, 2)
    assert e6.coeffs == (1, -504, -16632)
    assert all(c % 16 == 0 for c in eisenstein(4, 30).coeffs[1:])
    with pytest.raises(UsageError):
        eisenstein(5, 3)
    with pytest.raises(UsageError):
        eisenstein(2, 3)


def test_ek_congruence_examples():
    # E4 = 1 + 240q + ... so E4 - 1 is divisible by exactly 2^4 at q^1
    assert ek_congruence_check(4, 2, 4, 50)
    assert not ek_congruence_check(4, 2, 5, 50)
    assert ek_congruence_check(8, 2, 5, 50)
    assert ek_congruence_check(6, 3, 2, 50)
    with pytest.raises(UsageError):
        ek_congruence_check(6, 5, 1, 10)  # 6 not divisible by p - 1 = 4


def test_ek_congruence_matches_rule():
    # E_k = 1 mod p^m iff k = 0 mod p^(m-1)(p-1) (p odd), mod 2^(m-2) (p=2)
    for p in (2, 3, 5):
        for m in range(1, 5):
            for k in range(4, 80, 2):
                if p > 2 and k % (p - 1):
                    continue
                if p == 2:
                    predicted = m <= 2 or k % (2 ** (m - 2)) == 0
                else:
                    predicted = k % ((p - 1) * p ** (m - 1)) == 0
                assert ek_congruence_check(k, p, m, 30) == predicted, (p, m, k)


def test_delta_series():
    d = delta(10)
    assert d[0] == 0 and d[1] == 1
    assert d[2] == -24 and d[3] == 252 and d[7] == -16744
    # construction already cross-checks against the eta product; redo the
    # comparison here at precision 200 as an explicit oracle
    d200 = delta(200)
    prod = [0] * 201
    prod[0] = 1
    for n in range(1, 201):
        nxt = list(prod)
        for i in range(201 - n):
            if prod[i]:
                nxt[i + n] -= prod[i]
        prod = nxt
    eta = QSeries.from_list(prod).pow(24)
    shifted = (0,) + eta.coeffs[:200]
    assert d200.coeffs == shifted


def test_d_series():
    d = d_series(20)
    assert d[0] == 0 and d[1] == 15
    assert all(d[n] == 15 * sigma_power(3, n) for n in range(1, 21))
    assert all(d[n] % 4 == (3 * sigma_power(3, n)) % 4 for n in range(1, 21))
    # d - d^2 = Delta mod 2 up to precision 100
    N = 100
    dd = d_series(N)
    diff = dd - dd * dd - delta(N)
    assert all(c % 2 == 0 for c in diff.coeffs)


def test_hecke_qexp():
    t2 = hecke_qexp(2, 12, delta(40))
    assert t2.coeffs == tuple(-24 * c for c in delta(20).coeffs)
    e4d = eisenstein(4, 42).map_int() * delta(42)
    assert hecke_qexp(3, 16, e4d)[1] == -3348
    assert hecke_qexp(5, 12, QSeries.zero(30)).is_zero()
    with pytest.raises(UsageError):
        hecke_qexp(7, 12, QSeries.from_list([0, 1]))


def test_hecke_multiplicativity_on_delta():
    d = delta(100)
    for mn, (a, b) in ((6, (2, 3)), (10, (2, 5)), (15, (3, 5)), (14, (2, 7))):
        assert d[mn] == d[a] * d[b]


def test_u_v_operators():
    d = delta(20)
    assert u_op(2, v_op(d)).coeffs == d.coeffs
    assert u_op(2, delta(40))[1] == -24
    q = QSeries.from_list([0, 1])
    assert v_op(q).coeffs == (0, 0, 1)


def test_level1_basis():
    assert len(level1_basis(12, 30)) == 2
    assert len(level1_basis(0, 10)) == 1
    assert len(level1_basis(26, 60)) == 2


def test_gamma0_2_basis_counts():
    assert len(gamma0_2_basis(12, 30)) == 4
    assert len(gamma0_2_basis(0, 10)) == 1
    for k in range(2, 48, 2):
        assert len(gamma0_2_basis(k, 2 * (k // 4 + 1) + 2)) == k // 4 + 1


def test_victor_miller_exists_for_all_weights():
    for k in range(12, 48, 2):
        d = k // 4 + 1
        vm = victor_miller(gamma0_2_basis(k, 2 * d + 2))
        assert vm is not None, k
        for i, s in enumerate(vm):
            assert all(s[j] == (1 if j == i else 0) for j in range(d))
            assert all(isinstance(c, int) for c in s.coeffs)


def test_victor_miller_k0():
    vm = victor_miller(GradedBasis(0, (QSeries.one(4),)))
    assert vm is not None and vm[0].coeffs[0] == 1


def test_victor_miller_scaled_fails():
    basis = gamma0_2_basis(12, 30)
    scaled = GradedBasis(12, tuple(s * 2 for s in basis.series))
    assert victor_miller(scaled) is None


def test_victor_miller_reproduces_span():
    basis = gamma0_2_basis(16, 30)
    vm = victor_miller(basis)
    d = len(basis)
    # every input series is the integer combination given by its first
    # d coefficients
    for s in basis.series:
        combo = [0] * (31)
        for i in range(d):
            ci = s[i]
            for j in range(31):
                combo[j] += ci * vm[i][j]
        assert tuple(combo) == s.coeffs


def test_victor_miller_precision_guard():
    with pytest.raises(UsageError):
        victor_miller(gamma0_2_basis(12, 6))


def test_sturm_bound():
    assert sturm_bound(12) == 2
    assert sturm_bound(60) == 6
    assert sturm_bound(120) == 11
    with pytest.raises(UsageError):
        sturm_bound(13)
