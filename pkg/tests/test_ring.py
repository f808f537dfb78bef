import itertools
import random
from fractions import Fraction

import pytest

from heckecert.ring import (HowellBasis, IntMatrix, Modulus, Residue,
                            UsageError, charpoly, howell_insert,
                            newton_slopes_at_least, newton_slopes_greater,
                            poly_eval_matrix, smith_normal_form,
                            solve_in_span)

from conftest import brute_force_span


def test_modulus_validation():
    Modulus(2, 7)
    Modulus(3, 2)
    with pytest.raises(UsageError):
        Modulus(4, 1)
    with pytest.raises(UsageError):
        Modulus(3, 0)


def test_residue_ring_axioms():
    rng = random.Random(11)
    for _ in range(100):
        mod = Modulus(rng.choice([2, 3, 5]), rng.randint(1, 4))
        a, b, c = (Residue(rng.randrange(mod.q), mod) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a - a).value == 0


def test_residue_modulus_mismatch():
    with pytest.raises(UsageError):
        Residue(1, Modulus(2, 2)) + Residue(1, Modulus(3, 1))


def test_howell_single_generator():
    mod = Modulus(2, 2)
    basis = howell_insert(HowellBasis(mod, 1), [2])
    assert basis.rows == [[2]]
    again = howell_insert(basis, [2])
    assert again.rows == basis.rows  # idempotent
    assert again.contains([2])
    assert not again.contains([1])


def test_howell_span_size_eight():
    mod = Modulus(2, 2)
    basis = HowellBasis(mod, 2)
    gens = [(2, 0), (0, 2), (1, 1)]
    for g in gens:
        basis = howell_insert(basis, g)
    span = brute_force_span(gens, 4, 2)
    assert len(span) == 8
    members = [v for v in itertools.product(range(4), repeat=2)
               if basis.contains(v)]
    assert set(members) == span


@pytest.mark.parametrize("p,m,dim", [(2, 2, 4), (2, 2, 3), (3, 1, 4),
                                     (2, 1, 8), (3, 2, 4), (2, 4, 2)])
def test_howell_span_matches_brute_force(p, m, dim):
    # spec invariant: m * dim <= 8 keeps the enumeration tractable
    assert m * dim <= 8
    rng = random.Random(p * 100 + m * 10 + dim)
    mod = Modulus(p, m)
    for _ in range(100 // dim + 5):
        ngens = rng.randint(1, 3)
        gens = [tuple(rng.randrange(mod.q) for _ in range(dim))
                for _ in range(ngens)]
        basis = HowellBasis(mod, dim)
        for g in gens:
            basis = howell_insert(basis, g)
        span = brute_force_span(gens, mod.q, dim)
        for vec in itertools.product(range(mod.q), repeat=dim):
            assert basis.contains(vec) == (vec in span), (gens, vec)


def test_solve_in_span_basics():
    mod = Modulus(2, 2)
    basis = howell_insert(HowellBasis(mod, 1), [2])
    assert solve_in_span(basis, [2]) is not None
    assert solve_in_span(basis, [1]) is None


def test_solve_in_span_matches_exhaustive_mod9():
    mod = Modulus(3, 2)
    rng = random.Random(123)
    dim = 6
    for _ in range(25):
        ngens = rng.randint(1, 4)
        gens = [tuple(rng.randrange(9) for _ in range(dim)) for _ in range(ngens)]
        basis = HowellBasis(mod, dim)
        for g in gens:
            basis = howell_insert(basis, g)
        target = tuple(rng.randrange(9) for _ in range(dim))
        sol = solve_in_span(basis, target)
        reachable = False
        for coeffs in itertools.product(range(9), repeat=ngens):
            vec = tuple(sum(c * g[j] for c, g in zip(coeffs, gens)) % 9
                        for j in range(dim))
            if vec == target:
                reachable = True
                break
        assert (sol is not None) == reachable
        if sol is not None:
            combined = [0] * dim
            for gi, c in sol.items():
                for j in range(dim):
                    combined[j] = (combined[j] + c * gens[gi][j]) % 9
            assert tuple(combined) == target


def test_solve_combination_is_exact():
    mod = Modulus(2, 3)
    rng = random.Random(5)
    for _ in range(50):
        dim = rng.randint(1, 5)
        gens = [tuple(rng.randrange(8) for _ in range(dim))
                for _ in range(rng.randint(1, 5))]
        basis = HowellBasis(mod, dim)
        for g in gens:
            basis = howell_insert(basis, g)
        coeffs = [rng.randrange(8) for _ in gens]
        target = tuple(sum(c * g[j] for c, g in zip(coeffs, gens)) % 8
                       for j in range(dim))
        sol = solve_in_span(basis, target)
        assert sol is not None
        combined = [0] * dim
        for gi, c in sol.items():
            for j in range(dim):
                combined[j] = (combined[j] + c * gens[gi][j]) % 8
        assert tuple(combined) == target


def test_howell_dimension_mismatch():
    basis = HowellBasis(Modulus(2, 2), 3)
    with pytest.raises(UsageError):
        howell_insert(basis, [1, 2])


def test_snf_coprime_diagonal():
    U, D, V = smith_normal_form(IntMatrix([[2, 0], [0, 3]]))
    assert [D.rows[0][0], D.rows[1][1]] == [1, 6]


def test_snf_zero_matrix():
    A = IntMatrix([[0, 0], [0, 0]])
    U, D, V = smith_normal_form(A)
    assert D.is_zero()
    assert U == IntMatrix.identity(2)
    assert V == IntMatrix.identity(2)


def _det(M):
    n = M.nrows
    if n == 1:
        return M.rows[0][0]
    total = 0
    for j in range(n):
        minor = IntMatrix([row[:j] + row[j + 1:] for row in M.rows[1:]])
        total += (-1) ** j * M.rows[0][j] * _det(minor)
    return total


def test_snf_random_product_identity():
    rng = random.Random(42)
    for _ in range(100):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = IntMatrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        U, D, V = smith_normal_form(A)
        assert (U * A * V).rows == D.rows
        assert abs(_det(U)) == 1
        assert abs(_det(V)) == 1
        diag = [D.rows[t][t] for t in range(min(m, n))]
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert D.rows[i][j] == 0
        nz = [d for d in diag if d]
        assert all(d > 0 for d in nz)
        for a, b in zip(nz, nz[1:]):
            assert b % a == 0


def test_charpoly_examples():
    assert charpoly(IntMatrix([[-24]])) == [24, 1]
    assert charpoly(IntMatrix.identity(2)) == [1, -2, 1]
    with pytest.raises(UsageError):
        charpoly(IntMatrix([[1, 2]]))


def test_cayley_hamilton_random():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 4)
        A = IntMatrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
        assert poly_eval_matrix(charpoly(A), A).is_zero()


def test_newton_slopes_trivial_cases():
    assert newton_slopes_at_least([128, 1], 2, 7)
    assert not newton_slopes_at_least([64, 1], 2, 7)
    assert newton_slopes_at_least([2 ** 14, 2 ** 8, 1], 2, 7)
    with pytest.raises(UsageError):
        newton_slopes_at_least([1, 2], 2, 1)


def _padic_roots(coeffs, p, prec_exp):
    """Brute-force p-adic root search by digit lifting."""
    q = p ** prec_exp

    def poly(x):
        total = 0
        for c in reversed(coeffs):
            total = (total * x + c) % q
        return total

    roots = [r for r in range(p) if poly(r) % p == 0]
    level = 1
    while level < prec_exp:
        level += 1
        mod = p ** level
        nxt = []
        for r in roots:
            for digit in range(p):
                cand = r + digit * p ** (level - 1)
                total = 0
                for c in reversed(coeffs):
                    total = (total * cand + c) % mod
                if total == 0:
                    nxt.append(cand)
        roots = sorted(set(nxt))
    return roots


def test_newton_slopes_vs_padic_root_search():
    # double root -128: every root has valuation exactly 7
    coeffs = [2 ** 14, 2 ** 8, 1]
    assert newton_slopes_at_least(coeffs, 2, 7)
    assert not newton_slopes_at_least(coeffs, 2, Fraction(15, 2))
    roots = _padic_roots(coeffs, 2, 20)
    assert roots, "root search found no 2-adic roots"
    for r in roots:
        v = 0
        x = r
        while x % 2 == 0 and v < 20:
            x //= 2
            v += 1
        assert v >= 7


def test_newton_strict_variant():
    assert newton_slopes_greater([128, 1], 2, 6)
    assert not newton_slopes_greater([128, 1], 2, 7)
    assert newton_slopes_greater([0, 1], 2, 100)  # zero coefficient passes
