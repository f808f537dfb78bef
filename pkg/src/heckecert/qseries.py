"""Exact truncated q-expansions: Eisenstein series, the discriminant form,
Hecke/U/V operators, graded bases and their echelonization, Sturm bounds.

Coefficients are exact Python ints or Fractions; a series of precision N
stores a_0..a_N.  Products truncate correctly, so a_n of a product only
ever reads a_0..a_n of the factors.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ring import UsageError, gcdex


@dataclass(frozen=True)
class QSeries:
    """Truncated power series in q with exact coefficients a_0..a_prec."""

    prec: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.prec + 1:
            raise UsageError("coefficient list must have length prec + 1")

    @classmethod
    def from_list(cls, coeffs):
        return cls(len(coeffs) - 1, tuple(coeffs))

    @classmethod
    def zero(cls, prec):
        return cls(prec, tuple([0] * (prec + 1)))

    @classmethod
    def one(cls, prec):
        return cls(prec, tuple([1] + [0] * prec))

    def __getitem__(self, n):
        return self.coeffs[n]

    def truncate(self, prec):
        if prec > self.prec:
            raise UsageError("cannot extend precision")
        return QSeries(prec, self.coeffs[: prec + 1])

    def _common(self, other):
        prec = min(self.prec, other.prec)
        return prec, self.coeffs, other.coeffs

    def __add__(self, other):
        prec, a, b = self._common(other)
        return QSeries(prec, tuple(a[n] + b[n] for n in range(prec + 1)))

    def __sub__(self, other):
        prec, a, b = self._common(other)
        return QSeries(prec, tuple(a[n] - b[n] for n in range(prec + 1)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries(self.prec, tuple(other * x for x in self.coeffs))
        prec, a, b = self._common(other)
        out = [0] * (prec + 1)
        for i in range(prec + 1):
            ai = a[i]
            if ai:
                for j in range(prec + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return QSeries(prec, tuple(out))

    __rmul__ = __mul__

    def pow(self, e):
        if e < 0:
            raise UsageError("negative powers not supported")
        out = QSeries.one(self.prec)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def exact_divide(self, c):
        out = []
        for x in self.coeffs:
            if isinstance(x, Fraction) or isinstance(c, Fraction):
                out.append(Fraction(x) / c)
            else:
                if x % c:
                    raise UsageError(f"coefficient {x} not divisible by {c}")
                out.append(x // c)
        return QSeries(self.prec, tuple(out))

    def map_int(self):
        out = []
        for x in self.coeffs:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise UsageError("series is not integral")
                out.append(int(x))
            else:
                out.append(int(x))
        return QSeries(self.prec, tuple(out))

    def reduce_mod(self, q):
        return [int(x) % q for x in self.map_int().coeffs]

    def is_zero(self):
        return all(x == 0 for x in self.coeffs)


def sigma_power(k, n):
    """Divisor power sum: sum of d**k over divisors d of n."""
    if n < 1:
        raise UsageError("divisor sums need n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


@lru_cache(maxsize=None)
def bernoulli(k):
    """Exact k-th Bernoulli number via the standard recurrence."""
    if k < 0:
        raise UsageError("Bernoulli numbers need k >= 0")
    if k == 0:
        return Fraction(1)
    if k == 1:
        return Fraction(-1, 2)
    if k % 2:
        return Fraction(0)
    # sum_{j=0}^{k} C(k+1, j) B_j = 0
    total = Fraction(0)
    binom = 1
    for j in range(k):
        total += binom * bernoulli(j)
        binom = binom * (k + 1 - j) // (j + 1)
    return -total / (k + 1)


def eisenstein(k, N):
    """The weight-k Eisenstein series 1 - (2k/B_k) * sum sigma_{k-1}(n) q^n."""
    if k < 4 or k % 2:
        raise UsageError("Eisenstein series need even k >= 4")
    factor = Fraction(-2 * k) / bernoulli(k)
    coeffs = [Fraction(1)] + [factor * sigma_power(k - 1, n) for n in range(1, N + 1)]
    if all(c.denominator == 1 for c in coeffs):
        coeffs = [int(c) for c in coeffs]
    return QSeries(N, tuple(coeffs))


def _val_p_fraction(x, p):
    """p-adic valuation of an exact rational; None for 0."""
    if x == 0:
        return None
    num, den = (x.numerator, x.denominator) if isinstance(x, Fraction) else (int(x), 1)
    v = 0
    num = abs(num)
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def ek_congruence_check(k, p, m, N):
    """True iff every coefficient of E_k - 1 up to q^N has valuation >= m."""
    if p > 2 and k % (p - 1) != 0:
        raise UsageError("E_k is not p-integral for this k")
    E = eisenstein(k, N)
    for n in range(1, N + 1):
        v = _val_p_fraction(E[n], p)
        if v is not None and v < m:
            return False
    return True


@lru_cache(maxsize=None)
def delta(N):
    """The discriminant cusp form, computed as (E4^3 - E6^2)/1728 and
    cross-checked against the eta product q * prod (1 - q^n)^24."""
    if N < 1:
        raise UsageError("need precision >= 1")
    e4 = eisenstein(4, N).map_int()
    e6 = eisenstein(6, N).map_int()
    d = (e4.pow(3) - e6.pow(2)).exact_divide(1728)
    eta = _eta_product_24(N)
    if d.coeffs != eta.coeffs:
        raise AssertionError("discriminant series mismatch between routes")
    return d


def _eta_product_24(N):
    out = [0] * (N + 1)
    out[0] = 1
    for n in range(1, N + 1):
        # multiply by (1 - q^n)
        nxt = list(out)
        for i in range(N + 1 - n):
            if out[i]:
                nxt[i + n] -= out[i]
        out = nxt
    prod = QSeries(N, tuple(out)).pow(24)
    shifted = [0] + list(prod.coeffs[:N])
    return QSeries(N, tuple(shifted))


def d_series(N):
    """(E4 - 1)/16: integral because every higher coefficient of E4 is
    240 * sigma_3(n); used for the non-weak twist over Z/4."""
    return (eisenstein(4, N).map_int() - QSeries.one(N)).exact_divide(16)


def hecke_qexp(n, k, f: QSeries) -> QSeries:
    """T_n on a weight-k level-1 q-expansion; output precision prec // n."""
    if n < 1:
        raise UsageError("Hecke index must be positive")
    out_prec = f.prec // n
    if out_prec < 1 and f.prec < n:
        raise UsageError("insufficient precision for this Hecke operator")
    out = []
    for j in range(out_prec + 1):
        total = 0
        if j == 0:
            total = sigma_power(k - 1, n) * f[0] if n > 1 else f[0]
        else:
            g = _gcd(j, n)
            d = 1
            while d * d <= g:
                if g % d == 0:
                    total += d ** (k - 1) * f[j * n // (d * d)]
                    e = g // d
                    if e != d:
                        total += e ** (k - 1) * f[j * n // (e * e)]
                d += 1
        out.append(total)
    return QSeries(out_prec, tuple(out))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def u_op(p, f: QSeries) -> QSeries:
    """a_n -> a_{pn}; output precision prec // p."""
    out_prec = f.prec // p
    return QSeries(out_prec, tuple(f[p * n] for n in range(out_prec + 1)))


def v_op(f: QSeries) -> QSeries:
    """V(sum a_n q^n) = sum a_n q^{2n}; doubles the precision window."""
    out = [0] * (2 * f.prec + 1)
    for n in range(f.prec + 1):
        out[2 * n] = f[n]
    return QSeries(2 * f.prec, tuple(out))


@dataclass(frozen=True)
class GradedBasis:
    """Integer basis series spanning a weight-k space of modular forms."""

    weight: int
    series: tuple

    def __len__(self):
        return len(self.series)


def _dim_level1(k):
    if k < 0 or k % 2:
        return 0
    base = k // 12
    return base if k % 12 == 2 else base + 1


def level1_basis(k, N) -> GradedBasis:
    """Monomials E4^a E6^b Delta^c with 4a + 6b + 12c = k and b <= 1,
    ordered by increasing Delta exponent (echelon leading terms)."""
    if k < 0 or k % 2:
        raise UsageError("level-1 spaces need even non-negative weight")
    if k == 0:
        return GradedBasis(0, (QSeries.one(N),))
    e4 = eisenstein(4, N).map_int()
    e6 = eisenstein(6, N).map_int()
    dl = delta(N)
    series = []
    for c in range(k // 12 + 1):
        for b in (0, 1):
            rest = k - 12 * c - 6 * b
            if rest >= 0 and rest % 4 == 0:
                a = rest // 4
                series.append(e4.pow(a) * e6.pow(b) * dl.pow(c))
    if len(series) != _dim_level1(k):
        raise AssertionError("level-1 dimension mismatch with classical formula")
    return GradedBasis(k, tuple(series))


@lru_cache(maxsize=None)
def _x2_series(N):
    """1 + 24 * sum (sum of odd divisors of n) q^n, the weight-2 form on
    the index-2 congruence subgroup."""
    coeffs = [1]
    for n in range(1, N + 1):
        odd = sum(d for d in range(1, n + 1) if n % d == 0 and d % 2 == 1)
        coeffs.append(24 * odd)
    return QSeries(N, tuple(coeffs))


@lru_cache(maxsize=None)
def _y4_series(N):
    """The weight-4 eta quotient q * prod (1-q^{2n})^16 / (1-q^n)^8.

    Together with the weight-2 form this generates the full module of
    integral forms on the index-2 subgroup; the monomials in the weight-2
    form and E4 alone only span a finite-index sublattice, on which
    integral echelonization genuinely fails.
    """
    prod = QSeries.one(N)
    for n in range(1, N // 2 + 1):
        f = [0] * (N + 1)
        f[0] = 1
        if 2 * n <= N:
            f[2 * n] = -1
        prod = prod * QSeries(N, tuple(f))
    prod = prod.pow(16)
    inv = _inverse_eta_power(N, 8)
    shifted = [0] + list((prod * inv).coeffs[:N])
    return QSeries(N, tuple(shifted))


def _inverse_eta_power(N, e):
    """Coefficients of prod_n (1 - q^n)^(-e), exact integers."""
    prod = QSeries.one(N)
    for n in range(1, N + 1):
        f = [0] * (N + 1)
        f[0] = 1
        f[n] = -1
        prod = prod * QSeries(N, tuple(f))
    prod = prod.pow(e)
    # invert the unit power series exactly
    inv = [0] * (N + 1)
    inv[0] = 1
    for n in range(1, N + 1):
        s = 0
        for j in range(1, n + 1):
            s += prod.coeffs[j] * inv[n - j]
        inv[n] = -s
    return QSeries(N, tuple(inv))


def gamma0_2_basis(k, N) -> GradedBasis:
    """Monomials X2^a Y4^b with 2a + 4b = k; the count must be k//4 + 1."""
    if k < 0 or k % 2:
        raise UsageError("even non-negative weight required")
    if k == 0:
        return GradedBasis(0, (QSeries.one(N),))
    x2 = _x2_series(N)
    y4 = _y4_series(N)
    series = []
    for b in range(k // 4 + 1):
        a = (k - 4 * b) // 2
        series.append(x2.pow(a) * y4.pow(b))
    if len(series) != k // 4 + 1:
        raise AssertionError("index-2 subgroup dimension mismatch")
    return GradedBasis(k, tuple(series))


def victor_miller(basis: GradedBasis):
    """Integral echelon basis b_i = q^i + O(q^d), or None.

    Exists iff the leading d x d coefficient block is invertible over the
    integers; the returned series keep the input precision.
    """
    d = len(basis)
    prec = min(s.prec for s in basis.series)
    if prec < 2 * d + 2:
        raise UsageError("victor_miller needs precision >= 2*dim + 2")
    rows = []
    for s in basis.series:
        s = s.map_int()
        rows.append([int(x) for x in s.coeffs[: prec + 1]])
    block = [row[:d] for row in rows]
    inv = _int_matrix_inverse(block)
    if inv is None:
        return None
    out = []
    for i in range(d):
        coeffs = [sum(inv[i][t] * rows[t][j] for t in range(d))
                  for j in range(prec + 1)]
        out.append(QSeries(prec, tuple(coeffs)))
    for i, s in enumerate(out):
        assert all(s[j] == (1 if j == i else 0) for j in range(d))
    return out


def _int_matrix_inverse(block):
    """Exact inverse of an integer matrix if it is unimodular, else None."""
    n = len(block)
    M = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(block)]
    row = 0
    for col in range(n):
        piv = None
        for r in range(row, n):
            if M[r][col] != 0:
                piv = r
                break
        if piv is None:
            return None
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for r in range(n):
            if r != row and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[row])]
        row += 1
    out = []
    for i in range(n):
        vals = M[i][n:]
        if any(v.denominator != 1 for v in vals):
            return None
        out.append([int(v) for v in vals])
    return out


def sturm_bound(k):
    """Coefficient bound determining a level-1 modular form of weight k."""
    if k % 2:
        raise UsageError("even weight required")
    return k // 12 + 1
