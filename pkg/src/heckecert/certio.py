"""Certificate file format: serialization, parsing, validation.

One JSON document per prover run:

    {"ell": .., "p": .., "m": ..,
     "certificates": [{"i0": .., "w0": .., "c": ..,
                       "terms": [{"alpha": .., "gamma": [a,b,c,d],
                                  "eps": "sigma"|"tau"}, ...],
                       "residual_tags": [[a1,b1,a2,b2], ...]}, ...],
     "failures": [{"i0": .., "w0": .., "reason": ".."}, ...]}

All residues are decimal least non-negative integers and key order is
fixed, so equal runs produce byte-identical files.
"""

import json
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .ring import UsageError, is_prime
from .canonical import phi_prime_power


class MalformedCertificate(ValueError):
    """Raised when a certificate document fails structural validation."""


@dataclass(frozen=True)
class CertTerm:
    alpha: int
    gamma: Tuple[int, int, int, int]
    eps: str


@dataclass(frozen=True)
class Certificate:
    i0: int
    w0: int
    c: int
    terms: Tuple[CertTerm, ...]
    residual_tags: Tuple[Tuple[int, int, int, int], ...]


@dataclass(frozen=True)
class CertificateFile:
    ell: int
    p: int
    m: int
    certificates: Tuple[Certificate, ...]
    failures: Tuple[dict, ...] = ()

    @property
    def q(self):
        return self.p ** self.m


def to_document(cf: CertificateFile) -> dict:
    return {
        "ell": cf.ell,
        "p": cf.p,
        "m": cf.m,
        "certificates": [
            {
                "i0": cert.i0,
                "w0": cert.w0,
                "c": cert.c,
                "terms": [
                    {"alpha": t.alpha, "gamma": list(t.gamma), "eps": t.eps}
                    for t in cert.terms
                ],
                "residual_tags": [list(tag) for tag in cert.residual_tags],
            }
            for cert in cf.certificates
        ],
        "failures": [dict(f) for f in cf.failures],
    }


def dumps(cf: CertificateFile) -> str:
    return json.dumps(to_document(cf), indent=2) + "\n"


def write_file(cf: CertificateFile, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(cf))


def _need(doc, key, types):
    if key not in doc:
        raise MalformedCertificate(f"missing field {key!r}")
    val = doc[key]
    if not isinstance(val, types):
        raise MalformedCertificate(f"field {key!r} has wrong type")
    if isinstance(val, bool):
        raise MalformedCertificate(f"field {key!r} has wrong type")
    return val


def parse_document(doc) -> CertificateFile:
    """Validate a parsed JSON document; raises MalformedCertificate."""
    if not isinstance(doc, dict):
        raise MalformedCertificate("top level must be an object")
    ell = _need(doc, "ell", int)
    p = _need(doc, "p", int)
    m = _need(doc, "m", int)
    if not is_prime(ell) or not is_prime(p):
        raise MalformedCertificate("ell and p must be prime")
    if ell == p:
        raise MalformedCertificate("ell must differ from p")
    if m < 1:
        raise MalformedCertificate("m must be at least 1")
    q = p ** m
    phi = phi_prime_power(p, m)
    certs = _need(doc, "certificates", list)
    fails = doc.get("failures", [])
    if not isinstance(fails, list):
        raise MalformedCertificate("failures must be a list")
    out = []
    for entry in certs:
        if not isinstance(entry, dict):
            raise MalformedCertificate("certificate entries must be objects")
        i0 = _need(entry, "i0", int)
        w0 = _need(entry, "w0", int)
        c = _need(entry, "c", int)
        # class residues live in [0, phi); w0 is always even (even weights
        # only); i0 is even except that both parities are allowed at phi = 2
        if not 0 <= i0 < max(phi, 2):
            raise MalformedCertificate(f"i0 = {i0} out of range for phi = {phi}")
        if not 0 <= w0 < phi and w0 != 0:
            raise MalformedCertificate(f"w0 = {w0} out of range for phi = {phi}")
        if w0 % 2:
            raise MalformedCertificate("w0 must be even")
        if phi > 2 and i0 % 2:
            raise MalformedCertificate("i0 must be even")
        if not 0 <= c < q:
            raise MalformedCertificate(f"constant {c} out of range mod {q}")
        raw_terms = _need(entry, "terms", list)
        terms = []
        for t in raw_terms:
            if not isinstance(t, dict):
                raise MalformedCertificate("terms must be objects")
            alpha = _need(t, "alpha", int)
            if not 1 <= alpha < q:
                raise MalformedCertificate(f"alpha = {alpha} out of range mod {q}")
            gamma = _need(t, "gamma", list)
            if len(gamma) != 4 or not all(isinstance(x, int) and not isinstance(x, bool)
                                          for x in gamma):
                raise MalformedCertificate("gamma must be four integers")
            if not all(0 <= x < q for x in gamma):
                raise MalformedCertificate("gamma entries out of range")
            det = (gamma[0] * gamma[3] - gamma[1] * gamma[2]) % q
            if det % p == 0:
                raise MalformedCertificate("gamma is not invertible mod p")
            eps = _need(t, "eps", str)
            if eps not in ("sigma", "tau"):
                raise MalformedCertificate(f"unknown relation kind {eps!r}")
            terms.append(CertTerm(alpha, tuple(gamma), eps))
        raw_tags = _need(entry, "residual_tags", list)
        tags = []
        for tag in raw_tags:
            if (not isinstance(tag, list) or len(tag) != 4
                    or not all(isinstance(x, int) and not isinstance(x, bool)
                               for x in tag)):
                raise MalformedCertificate("residual tags must be 4 integers")
            if not all(0 <= x < p for x in tag):
                raise MalformedCertificate("residual tag entries out of range")
            tags.append(tuple(tag))
        out.append(Certificate(i0, w0, c, tuple(terms), tuple(tags)))
    return CertificateFile(ell, p, m, tuple(out), tuple(fails))


def loads(text: str) -> CertificateFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCertificate(f"invalid JSON: {exc}") from exc
    return parse_document(doc)


def read_file(path) -> CertificateFile:
    with open(path) as fh:
        return loads(fh.read())
