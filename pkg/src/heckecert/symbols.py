"""Level-1 modular symbols: polynomial right-action, relations, Hecke matrices.

Degree-w homogeneous polynomials in X, Y carry a right action of integer
2x2 matrices.  Quotienting by the two standard relation families (and by
torsion) gives the weight-(w+2) symbol space; the plus-part of its
cuspidal subspace carries Hecke matrices whose eigenvalues contain every
cusp-form Hecke eigenvalue in that weight.

The torsion-free quotient is represented through the rational kernel of
the relation matrix: if the columns of K span that kernel, x -> x*K kills
exactly the saturated relation lattice, so the quotient embeds as a
finite-index sublattice of Z^rank.  All lattice arithmetic then happens
in that small ambient dimension, which keeps every basis exact and small.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .ring import (IntMatrix, UsageError, _snf_state, charpoly, gcdex,
                   newton_slopes_greater, solve_rational)


@dataclass(frozen=True)
class Mat2:
    """Integer 2x2 matrix (a b; c d)."""

    a: int
    b: int
    c: int
    d: int

    def __mul__(self, other):
        return Mat2(self.a * other.a + self.b * other.c,
                    self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c,
                    self.c * other.b + self.d * other.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def entries(self):
        return (self.a, self.b, self.c, self.d)


IDENTITY = Mat2(1, 0, 0, 1)
SIGMA = Mat2(0, -1, 1, 0)    # sigma^2 = -1, so order 2 modulo scalars
TAU = Mat2(0, -1, 1, -1)     # order 3


@dataclass(frozen=True)
class HomogPoly:
    """Homogeneous polynomial of degree w; coeffs[i] multiplies X^i Y^(w-i)."""

    w: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.w + 1:
            raise UsageError("coefficient vector must have length w + 1")

    @classmethod
    def monomial(cls, i, w, c=1):
        if not 0 <= i <= w:
            raise UsageError(f"monomial exponent {i} out of range for degree {w}")
        coeffs = [0] * (w + 1)
        coeffs[i] = c
        return cls(w, tuple(coeffs))

    @classmethod
    def zero(cls, w):
        return cls(w, tuple([0] * (w + 1)))

    def __add__(self, other):
        if self.w != other.w:
            raise UsageError("degree mismatch")
        return HomogPoly(self.w, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if self.w != other.w:
            raise UsageError("degree mismatch")
        return HomogPoly(self.w, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c):
        return HomogPoly(self.w, tuple(c * x for x in self.coeffs))

    def reduce_mod(self, q):
        return HomogPoly(self.w, tuple(x % q for x in self.coeffs))

    def is_zero(self):
        return all(x == 0 for x in self.coeffs)


def _pow_linear(a, b, n):
    """Coefficient list of (a*X + b*Y)**n, index = exponent of X."""
    out = [0] * (n + 1)
    out[0] = 1
    for t in range(n):
        nxt = [0] * (n + 1)
        for j in range(t + 1):
            if out[j]:
                nxt[j] += b * out[j]
                nxt[j + 1] += a * out[j]
        out = nxt
    return out


def act(P: HomogPoly, g: Mat2) -> HomogPoly:
    """Right action P[g] = P(aX + bY, cX + dY)."""
    w = P.w
    out = [0] * (w + 1)
    for i, ci in enumerate(P.coeffs):
        if ci == 0:
            continue
        top = _pow_linear(g.a, g.b, i)
        bot = _pow_linear(g.c, g.d, w - i)
        for j, tj in enumerate(top):
            if tj:
                for u, bu in enumerate(bot):
                    if bu:
                        out[j + u] += ci * tj * bu
    return HomogPoly(w, tuple(out))


def cyc_tau(P: HomogPoly, g: Mat2 = IDENTITY) -> HomogPoly:
    """P[g + g*tau + g*tau^2]."""
    return act(P, g) + act(P, g * TAU) + act(P, g * (TAU * TAU))


def cyc_sigma(P: HomogPoly, g: Mat2 = IDENTITY) -> HomogPoly:
    """P[g + g*sigma]."""
    return act(P, g) + act(P, g * SIGMA)


def involution(P: HomogPoly) -> HomogPoly:
    """(iota* P)(X, Y) = -P(Y, X)."""
    w = P.w
    return HomogPoly(w, tuple(-P.coeffs[w - i] for i in range(w + 1)))


@lru_cache(maxsize=None)
def heilbronn_merel(n: int) -> tuple:
    """All integer (a b; c d) with a > b >= 0, d > c >= 0, ad - bc = n.

    Deterministically ordered lexicographically on (a, b, c, d).  The
    bound a + d <= n + 1 follows from ad - bc = n with b < a, c < d.
    """
    if n < 1:
        raise UsageError("determinant must be positive")
    out = []
    for a in range(1, n + 1):
        for b in range(0, a):
            for c in range(0, n + 1):
                rest = n + b * c
                if rest % a:
                    continue
                d = rest // a
                if d > c:
                    out.append(Mat2(a, b, c, d))
    return tuple(sorted(out, key=lambda m: m.entries()))


def hecke_on_poly(n: int, P: HomogPoly) -> HomogPoly:
    """T_n P = sum of P[M] over the determinant-n Heilbronn-Merel matrices."""
    out = HomogPoly.zero(P.w)
    for M in heilbronn_merel(n):
        out = out + act(P, M)
    return out


# ---------------------------------------------------------------------------
# symbol spaces
# ---------------------------------------------------------------------------

def _rational_kernel(rows):
    """Primitive integer basis vectors of {y : rows . y = 0} over Q.

    Gaussian elimination over exact rationals; one vector per free column,
    cleared of denominators and divided by content.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    M = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if M[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    free = [j for j in range(n) if j not in pivots]
    out = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for t, pc in enumerate(pivots):
            vec[pc] = -M[t][fc]
        den = 1
        for x in vec:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in vec]
        g = 0
        for x in ints:
            g = gcd(g, x)
        out.append([x // g for x in ints])
    return out


def _row_hnf_with_lifts(rows, want=None):
    """Row HNF of an integer matrix plus transform rows for the pivots.

    Returns (hnf_rows, lift_rows): hnf_rows are the nonzero HNF rows and
    lift_rows[t] expresses hnf_rows[t] over the input rows.  Only the
    first `want` pivot rows of the transform are kept (all by default).
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    track = want is None or want > 0
    D = [list(r) for r in rows]
    T = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if track else None
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = None
        for i in range(row, m):
            if D[i][col] != 0 and (piv is None or abs(D[i][col]) < abs(D[piv][col])):
                piv = i
        if piv is None:
            continue
        D[row], D[piv] = D[piv], D[row]
        if track:
            T[row], T[piv] = T[piv], T[row]
        for i in range(row + 1, m):
            while D[i][col] != 0:
                g, x, y = gcdex(D[row][col], D[i][col])
                a, b = D[row][col] // g, D[i][col] // g
                D[row], D[i] = ([x * u + y * v for u, v in zip(D[row], D[i])],
                                [-b * u + a * v for u, v in zip(D[row], D[i])])
                if track:
                    T[row], T[i] = ([x * u + y * v for u, v in zip(T[row], T[i])],
                                    [-b * u + a * v for u, v in zip(T[row], T[i])])
        if D[row][col] < 0:
            D[row] = [-x for x in D[row]]
            if track:
                T[row] = [-x for x in T[row]]
        for i in range(row):
            q = D[i][col] // D[row][col]
            if q:
                D[i] = [u - q * v for u, v in zip(D[i], D[row])]
                if track:
                    T[i] = [u - q * v for u, v in zip(T[i], T[row])]
        row += 1
    keep = row if want is None else min(want, row)
    return D[:row], (T[:keep] if track else [])


def _saturated_span_rows(gens, dim):
    """Saturated span of integer row vectors inside Z^dim (small dim)."""
    gens = [g for g in gens if any(g)]
    if not gens:
        return []
    st = _snf_state(IntMatrix(gens), track_u=False)
    r = sum(1 for t in range(min(st.m, st.n)) if st.D[t][t] != 0)
    return [list(st.Vinv[t]) for t in range(r)]


def _saturated_kernel_rows(rows):
    """Saturated basis of {x : x * A = 0} for small matrices A."""
    m = len(rows)
    st = _snf_state(IntMatrix(rows))
    r = sum(1 for t in range(min(st.m, st.n)) if st.D[t][t] != 0)
    return [st.U[t] for t in range(r, m)]


@dataclass(frozen=True)
class SymbolSpace:
    """Weight-(w+2) symbol data.

    kernel columns span the rational kernel of the relation matrix, so
    projecting a degree-w coefficient vector through them embeds the
    torsion-free quotient into Z^rank_m; lam_basis is a Hermite basis of
    the image lattice and lifts are degree-w polynomials mapping onto it.
    splus holds the plus-part basis in lam_basis coordinates.
    """

    w: int
    rank_m: int
    kernel: tuple      # (w+1) rows x rank_m cols
    lam_basis: tuple   # rank_m x rank_m, row HNF
    lifts: tuple       # rank_m rows of length w+1
    splus: tuple       # rows of length rank_m (coordinates w.r.t. lam_basis)

    @property
    def rank_splus(self):
        return len(self.splus)

    def _to_lambda(self, vec):
        return [sum(vec[i] * self.kernel[i][j] for i in range(self.w + 1))
                for j in range(self.rank_m)]

    def _lambda_coords(self, lam):
        """Coordinates w.r.t. lam_basis (exact; raises if not in lattice)."""
        lam = list(lam)
        coords = [0] * self.rank_m
        # lam_basis is in row HNF with pivots on the diagonal
        for t in range(self.rank_m):
            piv = self.lam_basis[t][t]
            if lam[t] % piv:
                raise UsageError("vector is not in the symbol lattice")
            c = lam[t] // piv
            coords[t] = c
            if c:
                lam = [a - c * b for a, b in zip(lam, self.lam_basis[t])]
        if any(lam):
            raise UsageError("vector is not in the symbol lattice")
        return coords

    def project_poly(self, P: HomogPoly):
        """Quotient coordinates of a degree-w polynomial."""
        if P.w != self.w:
            raise UsageError("degree mismatch with symbol space")
        return self._lambda_coords(self._to_lambda(P.coeffs))

    def lift_coords(self, coords):
        """A degree-w polynomial with the given quotient coordinates."""
        n = self.w + 1
        vec = [0] * n
        for t, c in enumerate(coords):
            if c:
                for j in range(n):
                    vec[j] += c * self.lifts[t][j]
        return HomogPoly(self.w, tuple(vec))

    def splus_monomial_basis(self):
        """Plus-part basis lifted to degree-w coefficient vectors."""
        return [list(self.lift_coords(row).coeffs) for row in self.splus]


@lru_cache(maxsize=None)
def build_space(w: int) -> SymbolSpace:
    """Construct the weight-(w+2) symbol space for even w >= 0."""
    if w < 0 or w % 2:
        raise UsageError("symbol spaces are built for even non-negative w")
    n = w + 1
    rel_rows = []
    for i in range(n):
        P = HomogPoly.monomial(i, w)
        rel_rows.append(list(cyc_sigma(P).coeffs))
        rel_rows.append(list(cyc_tau(P).coeffs))
    kern_cols = _rational_kernel(rel_rows)
    rank_m = len(kern_cols)
    if rank_m == 0:
        return SymbolSpace(w=w, rank_m=0, kernel=tuple(tuple() for _ in range(n)),
                           lam_basis=(), lifts=(), splus=())
    kernel = tuple(tuple(col[i] for col in kern_cols) for i in range(n))
    for row in rel_rows:
        img = [sum(row[i] * kernel[i][j] for i in range(n)) for j in range(rank_m)]
        assert not any(img), "kernel does not annihilate the relations"

    lam_rows, lift_rows = _row_hnf_with_lifts([list(r) for r in kernel], want=rank_m)
    assert len(lam_rows) == rank_m, "image lattice rank mismatch"
    # lifts are only defined modulo the relation lattice; size-reduce them
    # by rounded projections onto the (small) relation rows
    lift_rows = [_size_reduce(row, rel_rows) for row in lift_rows]
    space = SymbolSpace(w=w, rank_m=rank_m,
                        kernel=kernel,
                        lam_basis=tuple(tuple(r) for r in lam_rows),
                        lifts=tuple(tuple(r) for r in lift_rows),
                        splus=())
    for t in range(rank_m):
        lam = space._to_lambda(space.lifts[t])
        assert list(lam) == list(space.lam_basis[t]), "lift/basis mismatch"

    # the involution must be well-defined on the quotient: it sends the
    # relation span into itself
    for i in range(n):
        P = HomogPoly.monomial(i, w)
        for rel in (cyc_sigma(P), cyc_tau(P)):
            img = space._to_lambda(involution(rel).coeffs)
            assert not any(img), "involution does not preserve relations"

    iota = [space.project_poly(involution(space.lift_coords(row)))
            for row in _identity_rows(rank_m)]

    # cuspidal sublattice: interior monomial symbols are exactly the kernel
    # of the boundary map, so their saturated span is the cuspidal lattice
    s_gens = [space.project_poly(HomogPoly.monomial(i, w)) for i in range(1, w)]
    s_basis = _saturated_span_rows(s_gens, rank_m)

    # plus part: kernel of (iota - 1) restricted to the cuspidal lattice
    BJ = []
    for brow in s_basis:
        img = [sum(brow[t] * iota[t][j] for t in range(rank_m)) - brow[j]
               for j in range(rank_m)]
        BJ.append(img)
    kern = _saturated_kernel_rows(BJ) if s_basis else []
    splus_rows = []
    for krow in kern:
        vec = [sum(krow[t] * s_basis[t][j] for t in range(len(s_basis)))
               for j in range(rank_m)]
        splus_rows.append(vec)
    splus_rows = _saturated_span_rows(splus_rows, rank_m)

    space = SymbolSpace(w=w, rank_m=rank_m, kernel=kernel,
                        lam_basis=space.lam_basis, lifts=space.lifts,
                        splus=tuple(tuple(r) for r in splus_rows))

    # every plus-part basis vector is fixed by the involution
    for brow in space.splus:
        img = [sum(brow[t] * iota[t][j] for t in range(rank_m))
               for j in range(rank_m)]
        assert list(img) == list(brow), "plus-part vector not involution-fixed"

    # cross-check: the antisymmetrized interior even monomials saturate to
    # the same lattice
    anti = []
    for i in range(2, w - 1, 2):
        gen = HomogPoly.monomial(i, w) - HomogPoly.monomial(w - i, w)
        anti.append(space.project_poly(gen))
    anti_basis = _saturated_span_rows(anti, rank_m)
    assert _same_row_lattice(anti_basis, [list(r) for r in space.splus]), \
        "plus-part does not match antisymmetrized generators"
    return space


def _identity_rows(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _size_reduce(vec, lattice_rows, passes=12):
    """Shrink vec by rounded projections onto lattice generators."""
    out = list(vec)
    norms = [sum(x * x for x in row) for row in lattice_rows]
    for _ in range(passes):
        changed = False
        for row, nrm in zip(lattice_rows, norms):
            if nrm == 0:
                continue
            dot = sum(a * b for a, b in zip(out, row))
            q = (2 * dot + nrm) // (2 * nrm)  # round(dot / nrm)
            if q:
                out = [a - q * b for a, b in zip(out, row)]
                changed = True
        if not changed:
            break
    return out


def _same_row_lattice(rows_a, rows_b):
    def contains(rows, vec):
        if not rows:
            return not any(vec)
        sol = solve_rational([[rows[t][j] for t in range(len(rows))]
                              for j in range(len(vec))], vec)
        return sol is not None and all(f.denominator == 1 for f in sol)

    return (all(contains(rows_b, v) for v in rows_a)
            and all(contains(rows_a, v) for v in rows_b))


def hecke_matrix(space: SymbolSpace, n: int) -> IntMatrix:
    """Matrix of T_n on the plus-part basis (row convention)."""
    k = space.rank_splus
    if k == 0:
        return IntMatrix.zeros(0, 0)
    images = []
    for brow in space.splus:
        lift = space.lift_coords(brow)
        images.append(space.project_poly(hecke_on_poly(n, lift)))
    B = [list(r) for r in space.splus]
    rows = []
    for img in images:
        sys_rows = [[B[t][j] for t in range(k)] for j in range(space.rank_m)]
        x = solve_rational(sys_rows, img)
        if x is None or any(f.denominator != 1 for f in x):
            raise AssertionError(
                "Hecke image left the plus-part lattice; invariant violated")
        rows.append([int(f) for f in x])
    return IntMatrix(rows)


def eigenvalue_congruence(space: SymbolSpace, n: int, c: int, p: int, m: int) -> bool:
    """Certify that every cusp eigenvalue of T_n in this weight is
    congruent to c modulo p^m in the integral closure: all roots of
    charpoly(T_n - c*I) have p-adic valuation > m - 1."""
    if space.rank_splus == 0:
        raise UsageError("empty symbol space has no eigenvalues to certify")
    T = hecke_matrix(space, n)
    shifted = IntMatrix([[T.rows[i][j] - (c if i == j else 0)
                          for j in range(T.ncols)] for i in range(T.nrows)])
    return newton_slopes_greater(charpoly(shifted), p, Fraction(m - 1))
