import itertools


def dim_cusp_level1(k):
    """Independent dimension oracle for level-1 cusp forms of weight k,
    counting monomials in the weight-graded free presentation."""
    if k < 0 or k % 2:
        return 0
    count = 0
    for c in range(k // 12 + 1):
        for b in (0, 1):
            rest = k - 12 * c - 6 * b
            if rest >= 0 and rest % 4 == 0:
                count += 1
    return max(count - 1, 0)


def brute_force_span(gens, q, dim):
    """All vectors reachable as Z/q combinations of the generators."""
    span = set()
    for coeffs in itertools.product(range(q), repeat=len(gens)):
        vec = tuple(sum(c * g[j] for c, g in zip(coeffs, gens)) % q
                    for j in range(dim))
        span.add(vec)
    return span
