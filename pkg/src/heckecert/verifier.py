"""Independent certificate verification.

This path consumes only the serialized certificate data; it never touches
prover state.  Two checks run per certificate:

* the canonical residuals are recomputed from the term list and must all
  vanish (and must match the stored tags), which proves the identity for
  every exponent pair in the class;
* the identity is re-derived directly at several pseudo-random class
  representatives, using nothing but the polynomial action.
"""

import random
from dataclasses import dataclass
from typing import List, Tuple

from .canonical import (canonical_residuals, phi_prime_power, residual_tags,
                        residuals_vanish)
from .certio import Certificate, CertificateFile
from .ring import UsageError
from .symbols import (SIGMA, TAU, HomogPoly, Mat2, act, cyc_sigma, cyc_tau,
                      heilbronn_merel)

DIRECT_CHECKS = 5


def verify_certificate_direct(cert: Certificate, ell, p, m, i_prime, w_prime) -> bool:
    """Re-derive the certified identity at one concrete exponent pair.

    Recomputes T_ell P - c P through the Heilbronn-Merel matrices and the
    right-hand side through the cyclic relation sums on integer lifts,
    then compares coefficient vectors mod p^m.
    """
    q = p ** m
    phi = phi_prime_power(p, m)
    if i_prime % phi != cert.i0 % phi or w_prime % phi != cert.w0 % phi:
        raise UsageError("exponents are outside the certificate's class")
    if not 0 <= i_prime <= w_prime:
        raise UsageError("need 0 <= i' <= w'")
    P = HomogPoly.monomial(i_prime, w_prime)
    lhs = HomogPoly.zero(w_prime)
    for M in heilbronn_merel(ell):
        lhs = lhs + act(P, M)
    lhs = lhs - P.scale(cert.c)
    rhs = HomogPoly.zero(w_prime)
    for term in cert.terms:
        g = Mat2(*term.gamma)
        rel = cyc_sigma(P, g) if term.eps == "sigma" else cyc_tau(P, g)
        rhs = rhs + rel.scale(term.alpha)
    return (lhs - rhs).reduce_mod(q).is_zero()


def check_instances(cert: Certificate, p, m, count=DIRECT_CHECKS):
    """Deterministic pseudo-random class representatives for direct checks.

    Always includes one representative with w' >= w0 + 3*phi.
    """
    phi = phi_prime_power(p, m)
    seed = (cert.i0 * 1000003 + cert.w0 * 101 + p * 13 + m) * 7 + cert.c
    rng = random.Random(seed)
    out = []
    big_w = cert.w0 + 3 * phi
    if big_w % 2:
        big_w += phi
    out.append((cert.i0, big_w))
    while len(out) < count:
        t = rng.randrange(0, 8)
        w = cert.w0 + phi * t
        if w < 2 or w % 2 or w < cert.i0:
            continue
        i = cert.i0 + phi * rng.randrange(0, (w - cert.i0) // phi + 1)
        if (i, w) not in out:
            out.append((i, w))
    return out


@dataclass
class VerifyReport:
    ok: bool
    checked: int
    problems: List[str]


def verify_file(cf: CertificateFile, direct_checks=DIRECT_CHECKS) -> VerifyReport:
    """Full independent verification of a certificate document."""
    problems = []
    for cert in cf.certificates:
        label = f"class (i0={cert.i0}, w0={cert.w0})"
        terms = [(t.alpha, t.gamma, t.eps) for t in cert.terms]
        collected = canonical_residuals(cf.ell, cert.c, terms,
                                        cert.i0, cert.w0, cf.p, cf.m)
        if not residuals_vanish(collected):
            problems.append(f"{label}: canonical residuals do not vanish")
            continue
        if tuple(residual_tags(collected)) != tuple(cert.residual_tags):
            problems.append(f"{label}: residual tags do not match recomputation")
            continue
        for (ip, wp) in check_instances(cert, cf.p, cf.m, direct_checks):
            if not verify_certificate_direct(cert, cf.ell, cf.p, cf.m, ip, wp):
                problems.append(f"{label}: direct check failed at (i'={ip}, w'={wp})")
                break
    return VerifyReport(ok=not problems, checked=len(cf.certificates),
                        problems=problems)
