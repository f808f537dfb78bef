"""Canonical-form residuals for congruence certificates.

A certificate claims, for a class pair (i0, w0) of exponent residues mod
phi = p^(m-1)(p-1), the identity

    T_ell X^i Y^(w-i) - c X^i Y^(w-i)
        = sum_j alpha_j * <X^i Y^(w-i) | gamma_j>_eps_j   (mod p^m)

for every i = i0, w = w0 (mod phi) with 0 <= i <= w.  Each side is a sum
of terms lam * (aX+bY)^i (cX+dY)^(w-i).  Splitting off the fixed prefix
(aX+bY)^(i0)(cX+dY)^(w0-i0) and normalizing the leftover factor pair,
terms with equal normalized pairs can be collected; the identity holds
universally when every collected prefix polynomial vanishes mod p^m.

Normalization is sound because the leftover exponents are divisible by
phi: scaling a row by a unit u multiplies the factor by u^phi·t = 1, and
changing a row entry by a multiple of p perturbs the factor by terms of
valuation at least v_p(binom(K, j)) + j >= (m-1) - v_p(j) + j >= m.
"""

from .ring import UsageError, gcdex
from .symbols import SIGMA, TAU, Mat2, heilbronn_merel


def phi_prime_power(p, m):
    """Euler phi of p^m."""
    return (p - 1) * p ** (m - 1)


def _inv_mod(x, q):
    g, a, _ = gcdex(x % q, q)
    if g != 1:
        raise UsageError(f"{x} is not invertible mod {q}")
    return a % q


def _normalize_row(a, b, exponent, lam, p, q):
    """Scale the row (a, b) to canonical unit form.

    Returns (full_row, key, lam'): full_row enters the prefix expansion at
    full precision mod q, key is the mod-p reduced pair used for
    grouping, and lam' absorbs unit^exponent from the scaling.
    """
    a %= q
    b %= q
    if a % p != 0:
        inv = _inv_mod(a, q)
        row = (1, (b * inv) % q)
        lam = (lam * pow(a, exponent, q)) % q
    elif b % p != 0:
        inv = _inv_mod(b, q)
        row = ((a * inv) % q, 1)
        lam = (lam * pow(b, exponent, q)) % q
    else:
        raise UsageError("matrix row is divisible by p; term cannot be normalized")
    return row, (row[0] % p, row[1] % p), lam


def _poly_mult(u, v, q):
    out = [0] * (len(u) + len(v) - 1)
    for i, x in enumerate(u):
        if x:
            for j, y in enumerate(v):
                if y:
                    out[i + j] = (out[i + j] + x * y) % q
    return out


def _pow_row(a, b, n, q):
    out = [1]
    for _ in range(n):
        nxt = [0] * (len(out) + 1)
        for j, x in enumerate(out):
            if x:
                nxt[j] = (nxt[j] + x * b) % q
                nxt[j + 1] = (nxt[j + 1] + x * a) % q
        out = nxt
    return out


def identity_term_list(ell, c, terms, q):
    """All (lam, matrix) terms of LHS - RHS of the certified identity.

    terms is a list of (alpha, (a, b, c, d), eps) with eps 'sigma' or
    'tau'; matrices are integer lifts reduced mod q.
    """
    out = [(1, M.entries()) for M in heilbronn_merel(ell)]
    out.append((-c, (1, 0, 0, 1)))
    for alpha, gamma, eps in terms:
        g = Mat2(*[x % q for x in gamma])
        if eps == "sigma":
            mats = (g, g * SIGMA)
        elif eps == "tau":
            mats = (g, g * TAU, g * (TAU * TAU))
        else:
            raise UsageError(f"unknown relation kind {eps!r}")
        for M in mats:
            out.append((-alpha, M.entries()))
    return out


def canonical_residuals(ell, c, terms, i0, w0, p, m):
    """Collected prefix polynomials keyed by normalized factor pairs.

    Returns a dict mapping (a1, b1, a2, b2) over F_p to coefficient lists
    of length i0* + (w0-i0 mod phi) + 1; the certificate is universal when
    every list is zero mod p^m.
    """
    q = p ** m
    phi = phi_prime_power(p, m)
    i0s = i0 % phi
    j0s = (w0 - i0) % phi
    collect = {}
    for lam, mat in identity_term_list(ell, c, terms, q):
        lam %= q
        if lam == 0:
            continue
        a, b, cc, d = mat
        row1, key1, lam = _normalize_row(a, b, i0s, lam, p, q)
        row2, key2, lam = _normalize_row(cc, d, j0s, lam, p, q)
        prefix = _poly_mult(_pow_row(row1[0], row1[1], i0s, q),
                            _pow_row(row2[0], row2[1], j0s, q), q)
        key = (key1[0], key1[1], key2[0], key2[1])
        acc = collect.setdefault(key, [0] * (i0s + j0s + 1))
        for t, x in enumerate(prefix):
            acc[t] = (acc[t] + lam * x) % q
    return collect


def residual_tags(collected):
    """Sorted list of the canonical factor-pair tags that occurred."""
    return sorted(collected.keys())


def residuals_vanish(collected):
    return all(all(x == 0 for x in vec) for vec in collected.values())


def canonicalize(terms, i0, w0, p, m, ell, c):
    """Spec-level entry point: list of (tag, prefix polynomial) pairs."""
    collected = canonical_residuals(ell, c, terms, i0, w0, p, m)
    return [(key, list(vec)) for key, vec in sorted(collected.items())]
