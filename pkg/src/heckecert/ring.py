"""Exact arithmetic over Z and Z/p^m: residues, Howell bases, SNF, charpoly.

All integer linear algebra here is exact: matrices over Z use unbounded
Python ints, matrices over Z/p^m use least non-negative representatives.
The Howell basis is the workhorse for span membership over Z/p^m, where
plain row echelon is not enough because the ring has zero divisors.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ._kernels import reduce_vector


class UsageError(ValueError):
    """Raised when an operation is called outside its contract."""


def is_prime(n):
    """Trial-division primality check, adequate for the small p in scope."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def gcdex(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_x, x = x, old_x - quo * x
        old_y, y = y, old_y - quo * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def val_p(n, p):
    """p-adic valuation of an integer; None stands for +infinity at n = 0."""
    if n == 0:
        return None
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class Modulus:
    """The ring Z/p^m with p prime, m >= 1; q = p**m is cached."""

    p: int
    m: int
    q: int = field(init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise UsageError(f"p = {self.p} is not prime")
        if self.m < 1:
            raise UsageError(f"m = {self.m} must be >= 1")
        object.__setattr__(self, "q", self.p ** self.m)

    def reduce(self, x):
        return x % self.q

    def unit_inverse(self, x):
        x = x % self.q
        g, inv, _ = gcdex(x, self.q)
        if g != 1:
            raise UsageError(f"{x} is not a unit mod {self.q}")
        return inv % self.q


@dataclass(frozen=True)
class Residue:
    """An element of Z/p^m stored as its least non-negative representative."""

    value: int
    modulus: Modulus

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus.q)

    def _check(self, other):
        if self.modulus != other.modulus:
            raise UsageError("mixed moduli in residue arithmetic")

    def __add__(self, other):
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other):
        self._check(other)
        return Residue(self.value - other.value, self.modulus)

    def __mul__(self, other):
        self._check(other)
        return Residue(self.value * other.value, self.modulus)

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def inverse(self):
        return Residue(self.modulus.unit_inverse(self.value), self.modulus)

    def is_unit(self):
        return self.value % self.modulus.p != 0


# ---------------------------------------------------------------------------
# Howell basis over Z/p^m
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _HowellRow:
    vec: tuple            # length-dim tuple of ints in [0, q)
    piv_col: int
    piv_val: int          # p**s, the leading entry after normalization
    combo: tuple          # ((gen_index, coeff), ...) expressing vec over inserted gens


class HowellBasis:
    """Howell-form basis of a submodule of (Z/p^m)^dim.

    Immutable: ``insert`` returns a new basis (rows are shared).  Every
    inserted vector is remembered as a numbered generator so that
    ``solve`` can express targets as explicit combinations of the
    original generators, which is what certificate emission needs.
    """

    def __init__(self, modulus: Modulus, dim: int, _rows=None, _ngens=0):
        self.modulus = modulus
        self.dim = dim
        self._rows = [] if _rows is None else _rows  # sorted by piv_col
        self.num_generators = _ngens
        self._cache = None  # numpy views for fast reduction

    # -- internals ---------------------------------------------------------

    def _coerce(self, v):
        if len(v) != self.dim:
            raise UsageError(f"vector has length {len(v)}, ambient dim is {self.dim}")
        out = []
        for x in v:
            if isinstance(x, Residue):
                if x.modulus != self.modulus:
                    raise UsageError("vector modulus does not match basis modulus")
                out.append(x.value)
            else:
                out.append(int(x) % self.modulus.q)
        return out

    def _arrays(self):
        if self._cache is None or self._cache[0].shape[0] != len(self._rows):
            if self._rows:
                mat = np.array([r.vec for r in self._rows], dtype=np.int64)
                cols = np.array([r.piv_col for r in self._rows], dtype=np.int64)
                vals = np.array([r.piv_val for r in self._rows], dtype=np.int64)
            else:
                mat = np.zeros((0, self.dim), dtype=np.int64)
                cols = np.zeros(0, dtype=np.int64)
                vals = np.zeros(0, dtype=np.int64)
            self._cache = (mat, cols, vals)
        return self._cache

    def _reduce(self, vec):
        """Reduce vec against the rows; return (remainder, combo dict)."""
        q = self.modulus.q
        mat, cols, vals = self._arrays()
        arr = np.array(vec, dtype=np.int64)
        rem, coeffs = reduce_vector(mat, cols, vals, arr, q)
        combo = {}
        for t, c in enumerate(coeffs):
            if c:
                c = int(c)
                for gi, gc in self._rows[t].combo:
                    combo[gi] = (combo.get(gi, 0) + c * gc) % q
        return rem, combo

    def _insert_reduced(self, rows, rem, combo):
        """Insert a remainder into the mutable row list; recursive closure."""
        p, q, m = self.modulus.p, self.modulus.q, self.modulus.m
        rem = np.asarray(rem, dtype=np.int64) % q
        # reduce against the current rows first (they are sorted by pivot)
        for r in rows:
            x = int(rem[r.piv_col])
            if x != 0 and x % r.piv_val == 0:
                c = x // r.piv_val
                rem = (rem - c * np.array(r.vec, dtype=np.int64)) % q
                for gi, gc in r.combo:
                    combo[gi] = (combo.get(gi, 0) - c * gc) % q
        nz = np.nonzero(rem)[0]
        if nz.size == 0:
            return
        j = int(nz[0])
        x = int(rem[j])
        s = 0
        while x % p == 0:
            x //= p
            s += 1
        inv = self.modulus.unit_inverse(x)
        vec = (rem * inv) % q
        combo = {gi: (gc * inv) % q for gi, gc in combo.items()}
        new_row = _HowellRow(tuple(int(t) for t in vec), j, p ** s,
                             tuple(sorted((gi, gc) for gi, gc in combo.items() if gc)))
        displaced = None
        for t, r in enumerate(rows):
            if r.piv_col == j:
                displaced = rows.pop(t)
                break
        rows.append(new_row)
        rows.sort(key=lambda r: r.piv_col)
        if displaced is not None:
            # old pivot p**s' with s' > s: clear it against the new row
            c = displaced.piv_val // (p ** s)
            dvec = (np.array(displaced.vec, dtype=np.int64) - c * vec) % q
            dcombo = dict(displaced.combo)
            for gi, gc in combo.items():
                dcombo[gi] = (dcombo.get(gi, 0) - c * gc) % q
            self._insert_reduced(rows, dvec, dcombo)
        if s > 0:
            # Howell closure: p^(m-s) * row has leading zeros but may add span
            mult = p ** (m - s)
            cvec = (vec * mult) % q
            ccombo = {gi: (gc * mult) % q for gi, gc in combo.items()}
            self._insert_reduced(rows, cvec, ccombo)

    # -- public API ---------------------------------------------------------

    def insert(self, v):
        """New basis spanning span(self) + v; v becomes the next generator."""
        vec = self._coerce(v)
        rem, used = self._reduce(vec)
        gen_idx = self.num_generators
        combo = {gen_idx: 1}
        for gi, gc in used.items():
            combo[gi] = (combo.get(gi, 0) - gc) % self.modulus.q
        rows = list(self._rows)
        new = HowellBasis(self.modulus, self.dim, rows, gen_idx + 1)
        new._insert_reduced(rows, rem, combo)
        return new

    def contains(self, v):
        vec = self._coerce(v)
        rem, _ = self._reduce(vec)
        return not np.any(rem)

    def solve(self, target):
        """Coefficients over the inserted generators, or None.

        When the result is c, sum_i c[i] * generator_i == target mod p^m,
        with keys the 0-based insertion indices of the generators.
        """
        vec = self._coerce(target)
        rem, combo = self._reduce(vec)
        if np.any(rem):
            return None
        return {gi: gc for gi, gc in combo.items() if gc}

    @property
    def rows(self):
        return [list(r.vec) for r in self._rows]

    def __len__(self):
        return len(self._rows)


def howell_insert(basis: HowellBasis, v) -> HowellBasis:
    """Functional wrapper: basis spanning the old span plus v."""
    return basis.insert(v)


def solve_in_span(basis: HowellBasis, target) -> Optional[dict]:
    """Express target over the basis's inserted generators, or None."""
    return basis.solve(target)


# ---------------------------------------------------------------------------
# exact integer matrices
# ---------------------------------------------------------------------------

class IntMatrix:
    """Dense integer matrix with unbounded exact entries."""

    def __init__(self, rows: Sequence[Sequence[int]]):
        self.rows = [[int(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise UsageError("ragged matrix")

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)])

    def copy(self):
        return IntMatrix([row[:] for row in self.rows])

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __mul__(self, other):
        if self.ncols != other.nrows:
            raise UsageError("dimension mismatch in matrix product")
        out = [[0] * other.ncols for _ in range(self.nrows)]
        for i in range(self.nrows):
            ri = self.rows[i]
            for k in range(self.ncols):
                a = ri[k]
                if a:
                    rk = other.rows[k]
                    oi = out[i]
                    for j in range(other.ncols):
                        oi[j] += a * rk[j]
        return IntMatrix(out)

    def __sub__(self, other):
        return IntMatrix([[a - b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.rows, other.rows)])

    def scale(self, c):
        return IntMatrix([[c * x for x in row] for row in self.rows])

    def is_zero(self):
        return all(x == 0 for row in self.rows for x in row)


class _SnfState:
    """Mutable D with tracked row transform U, column transform V and V^-1.

    U tracking can be switched off: the row transform is the one matrix
    whose entries blow up during reduction, and several callers (notably
    the symbol-space construction) never look at it.
    """

    def __init__(self, A: IntMatrix, track_u=True):
        self.m, self.n = A.nrows, A.ncols
        self.D = [row[:] for row in A.rows]
        self.track_u = track_u
        self.U = ([[1 if i == j else 0 for j in range(self.m)] for i in range(self.m)]
                  if track_u else None)
        self.V = [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]
        self.Vinv = [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]

    def swap_rows(self, i1, i2):
        if i1 != i2:
            self.D[i1], self.D[i2] = self.D[i2], self.D[i1]
            if self.track_u:
                self.U[i1], self.U[i2] = self.U[i2], self.U[i1]

    def swap_cols(self, j1, j2):
        if j1 != j2:
            for row in self.D:
                row[j1], row[j2] = row[j2], row[j1]
            for row in self.V:
                row[j1], row[j2] = row[j2], row[j1]
            self.Vinv[j1], self.Vinv[j2] = self.Vinv[j2], self.Vinv[j1]

    def add_row(self, dst, src, c):
        if c:
            self.D[dst] = [a + c * b for a, b in zip(self.D[dst], self.D[src])]
            if self.track_u:
                self.U[dst] = [a + c * b for a, b in zip(self.U[dst], self.U[src])]

    def add_col(self, dst, src, c):
        if c:
            for row in self.D:
                row[dst] += c * row[src]
            for row in self.V:
                row[dst] += c * row[src]
            self.Vinv[src] = [a - c * b for a, b in
                              zip(self.Vinv[src], self.Vinv[dst])]

    def negate_row(self, i):
        self.D[i] = [-x for x in self.D[i]]
        if self.track_u:
            self.U[i] = [-x for x in self.U[i]]

    def two_row(self, r1, r2, a, b, c, d):
        """Rows (r1, r2) <- (a*r1 + b*r2, c*r1 + d*r2); ad - bc = ±1."""
        D = self.D
        D[r1], D[r2] = ([a * x + b * y for x, y in zip(D[r1], D[r2])],
                        [c * x + d * y for x, y in zip(D[r1], D[r2])])
        if self.track_u:
            U = self.U
            U[r1], U[r2] = ([a * x + b * y for x, y in zip(U[r1], U[r2])],
                            [c * x + d * y for x, y in zip(U[r1], U[r2])])

    def two_col(self, c1, c2, a, b, c, d):
        """Cols (c1, c2) <- (a*c1 + b*c2, c*c1 + d*c2); ad - bc = ±1."""
        for row in self.D:
            row[c1], row[c2] = a * row[c1] + b * row[c2], c * row[c1] + d * row[c2]
        for row in self.V:
            row[c1], row[c2] = a * row[c1] + b * row[c2], c * row[c1] + d * row[c2]
        det = a * d - b * c  # ±1
        ia, ib, ic, id_ = d * det, -c * det, -b * det, a * det
        Vi = self.Vinv
        Vi[c1], Vi[c2] = ([ia * x + ib * y for x, y in zip(Vi[c1], Vi[c2])],
                          [ic * x + id_ * y for x, y in zip(Vi[c1], Vi[c2])])


def _hermite_rows_pass(st: _SnfState):
    """One Kannan-Bachem style row HNF pass; keeps entries reduced."""
    m, n = st.m, st.n
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = None
        for i in range(row, m):
            if st.D[i][col] != 0 and (piv is None
                                      or abs(st.D[i][col]) < abs(st.D[piv][col])):
                piv = i
        if piv is None:
            continue
        st.swap_rows(row, piv)
        for i in range(row + 1, m):
            while st.D[i][col] != 0:
                g, x, y = gcdex(st.D[row][col], st.D[i][col])
                a, b = st.D[row][col] // g, st.D[i][col] // g
                st.two_row(row, i, x, y, -b, a)
        if st.D[row][col] < 0:
            st.negate_row(row)
        for i in range(row):
            q = st.D[i][col] // st.D[row][col]
            st.add_row(i, row, -q)
        row += 1


def _hermite_cols_pass(st: _SnfState):
    """Column analogue of the row pass, acting on V / V^-1."""
    m, n = st.m, st.n
    col = 0
    for row in range(m):
        if col >= n:
            break
        piv = None
        for j in range(col, n):
            if st.D[row][j] != 0 and (piv is None
                                      or abs(st.D[row][j]) < abs(st.D[row][piv])):
                piv = j
        if piv is None:
            continue
        st.swap_cols(col, piv)
        for j in range(col + 1, n):
            while st.D[row][j] != 0:
                g, x, y = gcdex(st.D[row][col], st.D[row][j])
                a, b = st.D[row][col] // g, st.D[row][j] // g
                st.two_col(col, j, x, y, -b, a)
        for j in range(col):
            q = st.D[row][j] // st.D[row][col]
            st.add_col(j, col, -q)
        col += 1


def _is_diagonal(st: _SnfState):
    for i in range(st.m):
        for j in range(st.n):
            if i != j and st.D[i][j] != 0:
                return False
    return True


def _snf_state(A: IntMatrix, track_u=True) -> _SnfState:
    st = _SnfState(A, track_u=track_u)
    # alternate row/column Hermite passes until the matrix is diagonal
    for _ in range(4 * (min(st.m, st.n) + 2)):
        _hermite_rows_pass(st)
        if _is_diagonal(st):
            break
        _hermite_cols_pass(st)
        if _is_diagonal(st):
            break
    assert _is_diagonal(st), "SNF alternation failed to converge"

    # move zero diagonal entries to the back
    k = min(st.m, st.n)
    for t in range(k):
        for s in range(k - 1, t, -1):
            if st.D[s - 1][s - 1] == 0 and st.D[s][s] != 0:
                st.swap_rows(s - 1, s)
                st.swap_cols(s - 1, s)
    # divisibility chain via the standard 2x2 diagonal fix
    r = sum(1 for t in range(k) if st.D[t][t] != 0)
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = st.D[i][i], st.D[i + 1][i + 1]
            if b % a != 0:
                changed = True
                st.add_row(i, i + 1, 1)          # row_i gets (a, b)
                g, x, y = gcdex(a, b)
                st.two_col(i, i + 1, x, y, -(b // g), a // g)
                # now D[i][i] = g, D[i+1] row has fill-in; clear it
                q = st.D[i + 1][i] // g
                st.add_row(i + 1, i, -q)
                # clear remaining off-diagonal in column i+1 of row i
                if st.D[i][i + 1] != 0:
                    st.add_col(i + 1, i, -(st.D[i][i + 1] // st.D[i][i]))
                if st.D[i + 1][i + 1] % st.D[i][i] != 0:
                    raise AssertionError("divisibility fix failed")
        for i in range(r):
            if st.D[i][i] < 0:
                st.negate_row(i)
    return st


def smith_normal_form(A: IntMatrix):
    """U, D, V with U*A*V = D diagonal, d_i | d_{i+1}, det U = det V = ±1."""
    st = _snf_state(A)
    return IntMatrix(st.U), IntMatrix(st.D), IntMatrix(st.V)


def charpoly(A: IntMatrix):
    """Coefficients of det(X*I - A), ascending, exact; Berkowitz algorithm."""
    if A.nrows != A.ncols:
        raise UsageError("charpoly needs a square matrix")
    n = A.nrows
    M = A.rows
    # descending coefficient vector of the leading principal charpolys
    c = [1]
    for i in range(1, n + 1):
        a = M[i - 1][i - 1]
        R = M[i - 1][: i - 1]
        Ccol = [M[k][i - 1] for k in range(i - 1)]
        sub = [row[: i - 1] for row in M[: i - 1]]
        v = [1, -a]
        w = Ccol[:]
        for k in range(2, i + 1):
            v.append(-sum(R[j] * w[j] for j in range(i - 1)))
            if k < i:
                w = [sum(sub[r][j] * w[j] for j in range(i - 1)) for r in range(i - 1)]
        # Toeplitz step: the truncated product of v with the previous vector
        nc = [0] * (i + 1)
        for d1, x in enumerate(v):
            if x:
                for d2, y in enumerate(c):
                    if d1 + d2 <= i:
                        nc[d1 + d2] += x * y
        c = nc
    return list(reversed(c))


def poly_eval_matrix(coeffs, A: IntMatrix):
    """Evaluate a polynomial (ascending coefficients) at a square matrix."""
    n = A.nrows
    out = IntMatrix.zeros(n, n)
    power = IntMatrix.identity(n)
    for k, ck in enumerate(coeffs):
        if k > 0:
            power = power * A
        if ck:
            out = IntMatrix([[o + ck * p for o, p in zip(ro, rp)]
                             for ro, rp in zip(out.rows, power.rows)])
    return out


def newton_slopes_at_least(coeffs, p, bound) -> bool:
    """True iff every root of the monic poly has p-adic valuation >= bound.

    coeffs are ascending; bound may be a Fraction.  Equivalent to
    v_p(coeffs[j]) >= bound*(n-j) for all j < n.
    """
    bound = Fraction(bound)
    n = len(coeffs) - 1
    if n < 0 or coeffs[-1] != 1:
        raise UsageError("newton slope test needs a monic polynomial")
    for j in range(n):
        v = val_p(coeffs[j], p)
        if v is None:
            continue
        if Fraction(v) < bound * (n - j):
            return False
    return True


def newton_slopes_greater(coeffs, p, bound) -> bool:
    """True iff every root of the monic poly has p-adic valuation > bound."""
    bound = Fraction(bound)
    n = len(coeffs) - 1
    if n < 0 or coeffs[-1] != 1:
        raise UsageError("newton slope test needs a monic polynomial")
    for j in range(n):
        v = val_p(coeffs[j], p)
        if v is None:
            continue
        if Fraction(v) <= bound * (n - j):
            return False
    return True


def solve_rational(A_rows, b):
    """Solve A x = b exactly over Q; returns list of Fractions or None.

    A_rows is a list of rows (the system may be overdetermined but must be
    consistent for a solution to be returned).
    """
    m = len(A_rows)
    n = len(A_rows[0]) if m else 0
    M = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(A_rows, b)]
    row = 0
    pivots = []
    for col in range(n):
        piv = None
        for r in range(row, m):
            if M[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for r in range(m):
            if r != row and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b2 for a, b2 in zip(M[r], M[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if M[r][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        x[col] = M[r][n]
    return x
