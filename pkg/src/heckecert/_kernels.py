"""Hot numeric kernels, with a numba path and a pure-numpy fallback.

Everything here works on int64 arrays of residues mod q where q = p**m is
at most a few hundred, so all intermediate products fit comfortably in
int64.  The backend is chosen once at import time:

* ``HECKECERT_KERNELS=numba``  force the @njit kernels (error if numba missing)
* ``HECKECERT_KERNELS=numpy``  force the pure-numpy fallbacks
* unset / ``auto``             numba when importable, else numpy

``benchmarks/bench_kernels.py`` times the two paths against each other.
"""

import os

import numpy as np

_CHOICE = os.environ.get("HECKECERT_KERNELS", "auto").lower()

if _CHOICE not in ("auto", "numba", "numpy"):
    raise RuntimeError(f"HECKECERT_KERNELS must be auto|numba|numpy, got {_CHOICE!r}")

_HAVE_NUMBA = False
if _CHOICE in ("auto", "numba"):
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:
        if _CHOICE == "numba":
            raise
        _HAVE_NUMBA = False


def kernel_backend():
    """Name of the active kernel backend ('numba' or 'numpy')."""
    return "numba" if _HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# pure-numpy reference implementations
# ---------------------------------------------------------------------------

def _pow_rows_numpy(ab, deg, q):
    """Rows of coefficients of (a*X + b*Y)**deg mod q.

    ab is (n, 2) int64; returns (n, deg + 1) with entry [t, j] the
    coefficient of X**j * Y**(deg - j).
    """
    n = ab.shape[0]
    out = np.zeros((n, deg + 1), dtype=np.int64)
    out[:, 0] = 1
    a = ab[:, 0]
    b = ab[:, 1]
    for t in range(deg):
        nxt = np.zeros_like(out)
        nxt[:, : t + 1] = (out[:, : t + 1] * b[:, None]) % q
        nxt[:, 1 : t + 2] = (nxt[:, 1 : t + 2] + out[:, : t + 1] * a[:, None]) % q
        out = nxt
    return out


def poly_action_rows_numpy(mats, i, w, q):
    """Coefficient rows of (aX+bY)**i (cX+dY)**(w-i) mod q for each matrix.

    mats is (n, 4) int64 rows (a, b, c, d); result is (n, w + 1) with
    column j the coefficient of X**j Y**(w-j).
    """
    mats = np.asarray(mats, dtype=np.int64) % q
    top = _pow_rows_numpy(mats[:, 0:2], i, q)
    bot = _pow_rows_numpy(mats[:, 2:4], w - i, q)
    out = np.zeros((mats.shape[0], w + 1), dtype=np.int64)
    for j in range(i + 1):
        out[:, j : j + (w - i) + 1] += top[:, j : j + 1] * bot
        out %= q
    return out % q


def closure_bfs_numpy(gens, q, cap):
    """Breadth-first closure of the group generated by gens inside GL2(Z/q).

    gens is (g, 4) int64.  Returns (elements, complete) where elements is
    (N, 4) int64 in deterministic BFS discovery order starting from the
    identity, and complete is False when the cap was hit first.
    """
    gens = np.asarray(gens, dtype=np.int64) % q
    q2, q3 = q * q, q * q * q

    def keys(m):
        return ((m[:, 0] * q + m[:, 1]) * q + m[:, 2]) * q + m[:, 3]

    ident = np.array([[1, 0, 0, 1]], dtype=np.int64)
    elems = ident
    seen = {int(keys(ident)[0])}
    frontier = ident
    complete = True
    while frontier.shape[0] > 0 and complete:
        prods = []
        for g in gens:
            a, b, c, d = (int(x) for x in g)
            pa = (frontier[:, 0] * a + frontier[:, 1] * c) % q
            pb = (frontier[:, 0] * b + frontier[:, 1] * d) % q
            pc = (frontier[:, 2] * a + frontier[:, 3] * c) % q
            pd = (frontier[:, 2] * b + frontier[:, 3] * d) % q
            prods.append(np.stack([pa, pb, pc, pd], axis=1))
        # interleave so products of the t-th frontier element by each
        # generator appear consecutively, matching the scalar BFS order
        stacked = np.stack(prods, axis=1).reshape(-1, 4)
        new = []
        for row in stacked:
            k = int(((row[0] * q + row[1]) * q + row[2]) * q + row[3])
            if k not in seen:
                if len(seen) >= cap:
                    complete = False
                    break
                seen.add(k)
                new.append(row)
        if new:
            frontier = np.array(new, dtype=np.int64)
            elems = np.concatenate([elems, frontier], axis=0)
        else:
            frontier = np.empty((0, 4), dtype=np.int64)
    return elems, complete


def reduce_vector_numpy(rows, piv_cols, piv_vals, vec, q):
    """Reduce vec against Howell rows; return (remainder, coeffs).

    rows is (r, n) with rows[t] having leading entry piv_vals[t] (a power
    of p) at column piv_cols[t]; coeffs[t] is the multiple of row t that
    was subtracted.
    """
    vec = vec.copy()
    r = rows.shape[0]
    coeffs = np.zeros(r, dtype=np.int64)
    for t in range(r):
        x = int(vec[piv_cols[t]])
        pv = int(piv_vals[t])
        if x != 0 and x % pv == 0:
            c = x // pv
            vec = (vec - c * rows[t]) % q
            coeffs[t] = c
    return vec, coeffs


def eigencheck_batch_numpy(fmat, gather_idx, gather_coef, gather_len, eig_col, col_j, q):
    """Batch Hecke-eigenvector test on rows of q-expansions mod q.

    fmat: (C, N) candidate expansions.  For condition s, the operator
    coefficient is sum_t gather_coef[s,t] * f[:, gather_idx[s,t]] over
    t < gather_len[s], which must equal f[:, eig_col[s]] * f[:, col_j[s]]
    mod q.  Returns a (C,) bool mask of candidates passing all conditions.
    """
    C = fmat.shape[0]
    ok = np.ones(C, dtype=bool)
    S = gather_idx.shape[0]
    for s in range(S):
        lhs = np.zeros(C, dtype=np.int64)
        for t in range(gather_len[s]):
            lhs += gather_coef[s, t] * fmat[:, gather_idx[s, t]]
        rhs = fmat[:, eig_col[s]] * fmat[:, col_j[s]]
        ok &= (lhs - rhs) % q == 0
    return ok


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:

    @njit(cache=True)
    def _poly_action_rows_jit(mats, i, w, q):  # pragma: no cover - jit
        n = mats.shape[0]
        out = np.zeros((n, w + 1), dtype=np.int64)
        top = np.zeros(i + 1, dtype=np.int64)
        bot = np.zeros(w - i + 1, dtype=np.int64)
        nxt = np.zeros(w + 2, dtype=np.int64)
        for t in range(n):
            a = mats[t, 0] % q
            b = mats[t, 1] % q
            c = mats[t, 2] % q
            d = mats[t, 3] % q
            top[:] = 0
            top[0] = 1
            for e in range(i):
                for j in range(e + 1, -1, -1):
                    v = (top[j] * b) % q
                    if j > 0:
                        v = (v + top[j - 1] * a) % q
                    nxt[j] = v
                for j in range(e + 2):
                    top[j] = nxt[j]
            bot[:] = 0
            bot[0] = 1
            for e in range(w - i):
                for j in range(e + 1, -1, -1):
                    v = (bot[j] * d) % q
                    if j > 0:
                        v = (v + bot[j - 1] * c) % q
                    nxt[j] = v
                for j in range(e + 2):
                    bot[j] = nxt[j]
            for j in range(i + 1):
                tj = top[j]
                if tj != 0:
                    for u in range(w - i + 1):
                        out[t, j + u] = (out[t, j + u] + tj * bot[u]) % q
        return out

    def poly_action_rows(mats, i, w, q):
        mats = np.ascontiguousarray(np.asarray(mats, dtype=np.int64) % q)
        return _poly_action_rows_jit(mats, i, w, q)

    @njit(cache=True)
    def _closure_bfs_jit(gens, q, cap):  # pragma: no cover - jit
        ng = gens.shape[0]
        elems = np.zeros((cap, 4), dtype=np.int64)
        elems[0, 0] = 1
        elems[0, 3] = 1
        seen = {q * q * q + 1}  # key of the identity (1,0,0,1)
        n = 1
        head = 0
        complete = True
        while head < n:
            ea = elems[head, 0]
            eb = elems[head, 1]
            ec = elems[head, 2]
            ed = elems[head, 3]
            head += 1
            for t in range(ng):
                a = gens[t, 0]
                b = gens[t, 1]
                c = gens[t, 2]
                d = gens[t, 3]
                pa = (ea * a + eb * c) % q
                pb = (ea * b + eb * d) % q
                pc = (ec * a + ed * c) % q
                pd = (ec * b + ed * d) % q
                k = ((pa * q + pb) * q + pc) * q + pd
                if k not in seen:
                    if n >= cap:
                        complete = False
                        return elems[:n], complete
                    seen.add(k)
                    elems[n, 0] = pa
                    elems[n, 1] = pb
                    elems[n, 2] = pc
                    elems[n, 3] = pd
                    n += 1
        return elems[:n], complete

    def closure_bfs(gens, q, cap):
        gens = np.ascontiguousarray(np.asarray(gens, dtype=np.int64) % q)
        return _closure_bfs_jit(gens, q, cap)

    @njit(cache=True)
    def _reduce_vector_jit(rows, piv_cols, piv_vals, vec, q):  # pragma: no cover
        r = rows.shape[0]
        n = vec.shape[0]
        out = vec.copy()
        coeffs = np.zeros(r, dtype=np.int64)
        for t in range(r):
            x = out[piv_cols[t]]
            pv = piv_vals[t]
            if x != 0 and x % pv == 0:
                c = x // pv
                for j in range(piv_cols[t], n):
                    out[j] = (out[j] - c * rows[t, j]) % q
                coeffs[t] = c
        return out, coeffs

    def reduce_vector(rows, piv_cols, piv_vals, vec, q):
        return _reduce_vector_jit(rows, piv_cols, piv_vals, vec, q)

    @njit(cache=True)
    def _eigencheck_batch_jit(fmat, gather_idx, gather_coef, gather_len,
                              eig_col, col_j, q):  # pragma: no cover - jit
        C = fmat.shape[0]
        S = gather_idx.shape[0]
        ok = np.ones(C, dtype=np.bool_)
        for r in range(C):
            for s in range(S):
                lhs = 0
                for t in range(gather_len[s]):
                    lhs += gather_coef[s, t] * fmat[r, gather_idx[s, t]]
                rhs = fmat[r, eig_col[s]] * fmat[r, col_j[s]]
                if (lhs - rhs) % q != 0:
                    ok[r] = False
                    break
        return ok

    def eigencheck_batch(fmat, gather_idx, gather_coef, gather_len, eig_col, col_j, q):
        return _eigencheck_batch_jit(
            np.ascontiguousarray(fmat), gather_idx, gather_coef,
            gather_len, eig_col, col_j, q)

else:
    poly_action_rows = poly_action_rows_numpy
    closure_bfs = closure_bfs_numpy
    reduce_vector = reduce_vector_numpy
    eigencheck_batch = eigencheck_batch_numpy
