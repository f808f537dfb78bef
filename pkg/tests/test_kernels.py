import random

import numpy as np

from heckecert._kernels import (closure_bfs, closure_bfs_numpy,
                                eigencheck_batch, eigencheck_batch_numpy,
                                kernel_backend, poly_action_rows,
                                poly_action_rows_numpy, reduce_vector,
                                reduce_vector_numpy)


def test_backend_reports():
    assert kernel_backend() in ("numba", "numpy")


def test_poly_action_rows_paths_agree():
    rng = random.Random(3)
    for _ in range(20):
        q = rng.choice([3, 8, 9, 128])
        w = rng.choice([2, 6, 11, 20])
        i = rng.randrange(0, w + 1)
        mats = np.array([[rng.randrange(q) for _ in range(4)]
                         for _ in range(rng.randint(1, 8))], dtype=np.int64)
        a = poly_action_rows(mats, i, w, q)
        b = poly_action_rows_numpy(mats, i, w, q)
        assert np.array_equal(a, b)


def test_poly_action_rows_value():
    # (X + Y)^2 from the unipotent matrix
    out = poly_action_rows(np.array([[1, 1, 0, 1]], dtype=np.int64), 2, 2, 97)
    assert out.tolist() == [[1, 2, 1]]


def test_closure_paths_agree():
    gens = np.array([[0, 2, 1, 0], [0, 2, 1, 2], [2, 0, 0, 1], [2, 0, 0, 2]],
                    dtype=np.int64)
    a, ca = closure_bfs(gens, 3, 10 ** 6)
    b, cb = closure_bfs_numpy(gens, 3, 10 ** 6)
    assert ca and cb
    assert np.array_equal(a, b)
    assert a.shape[0] == 48
    # capped runs agree too
    a, ca = closure_bfs(gens, 3, 10)
    b, cb = closure_bfs_numpy(gens, 3, 10)
    assert not ca and not cb
    assert np.array_equal(a, b)


def test_reduce_vector_paths_agree():
    rng = random.Random(9)
    for _ in range(30):
        q = rng.choice([4, 8, 9, 27])
        p = 2 if q in (4, 8) else 3
        n = rng.randint(2, 12)
        r = rng.randint(1, 5)
        rows = np.zeros((r, n), dtype=np.int64)
        piv_cols = np.sort(np.array(rng.sample(range(n), r), dtype=np.int64))
        piv_vals = np.array([p ** rng.randrange(0, 2) for _ in range(r)],
                            dtype=np.int64)
        for t in range(r):
            rows[t, piv_cols[t]] = piv_vals[t]
            for j in range(piv_cols[t] + 1, n):
                rows[t, j] = rng.randrange(q)
        vec = np.array([rng.randrange(q) for _ in range(n)], dtype=np.int64)
        ra, ca = reduce_vector(rows, piv_cols, piv_vals, vec.copy(), q)
        rb, cb = reduce_vector_numpy(rows, piv_cols, piv_vals, vec.copy(), q)
        assert np.array_equal(ra, rb) and np.array_equal(ca, cb)


def test_eigencheck_paths_agree():
    rng = random.Random(21)
    C, N, S, width = 40, 30, 12, 3
    fmat = np.array([[rng.randrange(9) for _ in range(N)] for _ in range(C)],
                    dtype=np.int64)
    gather_idx = np.array([[rng.randrange(N) for _ in range(width)]
                           for _ in range(S)], dtype=np.int64)
    gather_coef = np.array([[rng.randrange(9) for _ in range(width)]
                            for _ in range(S)], dtype=np.int64)
    gather_len = np.array([rng.randint(1, width) for _ in range(S)],
                          dtype=np.int64)
    eig_col = np.array([rng.randrange(N) for _ in range(S)], dtype=np.int64)
    col_j = np.array([rng.randrange(N) for _ in range(S)], dtype=np.int64)
    a = eigencheck_batch(fmat, gather_idx, gather_coef, gather_len,
                         eig_col, col_j, 9)
    b = eigencheck_batch_numpy(fmat, gather_idx, gather_coef, gather_len,
                               eig_col, col_j, 9)
    assert np.array_equal(a, b)
