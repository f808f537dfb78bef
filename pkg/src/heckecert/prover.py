"""Certificate discovery: group closure, relation harvesting, identity search.

For a Hecke index ell and modulus p^m, the search works class pair by
class pair over (i0, w0) in the even exponent residues mod phi(p^m).  Per
class pair it walks representatives (i, w) in increasing order, stacking
them into one linear system whose unknowns are relation classes: the
orbit of gamma under right multiplication by sigma (resp. tau) and the
sign scalar gives the same relation vector at every even-degree instance,
so each orbit contributes one unknown.  A solution of the stacked system
matches every representative seen so far; it is emitted only once its
canonical residuals vanish and independent direct checks pass.

Stacking is what makes the search converge: the solution set shrinks as
instances accumulate, and it stabilizes exactly at the universal
solutions, so a candidate that keeps verifying at new representatives is
eventually canonical-form universal or the class pair is reported failed.
"""

import concurrent.futures
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ._kernels import closure_bfs, poly_action_rows
from .canonical import (canonical_residuals, phi_prime_power, residual_tags,
                        residuals_vanish)
from .certio import Certificate, CertificateFile, CertTerm
from .ring import Modulus, HowellBasis, UsageError, is_prime
from .verifier import check_instances, verify_certificate_direct

DEFAULT_GROUP_CAP = 2_000_000
DEFAULT_BATCH = 64
DEFAULT_MAX_INSTANCES = 40

_SIGMA = (0, -1, 1, 0)
_TAU = (0, -1, 1, -1)


@dataclass(frozen=True)
class CongruenceTable:
    """Prover input: prove a_ell = targets[w0] mod p^m for weights w+2,
    w = w0 mod phi(p^m)."""

    ell: int
    p: int
    m: int
    targets: Dict[int, int]

    def __post_init__(self):
        if not is_prime(self.ell) or not is_prime(self.p):
            raise UsageError("ell and p must be prime")
        if self.ell == self.p:
            raise UsageError("the Hecke index must differ from p")
        if self.m < 1:
            raise UsageError("m must be at least 1")
        phi = phi_prime_power(self.p, self.m)
        expected = set(range(0, phi, 2)) if phi > 1 else {0}
        if set(self.targets) != expected:
            raise UsageError(
                f"targets must be keyed by the even residues mod {phi}")
        q = self.p ** self.m
        if any(not 0 <= c < q for c in self.targets.values()):
            raise UsageError("target constants must be reduced mod p^m")

    @property
    def q(self):
        return self.p ** self.m

    @property
    def phi(self):
        return phi_prime_power(self.p, self.m)


@dataclass(frozen=True)
class GroupClosure:
    """BFS closure of <sigma, tau, diag(ell,1), diag(ell,ell)> mod p^m."""

    modulus: Modulus
    elements: np.ndarray        # (N, 4) int64, BFS discovery order
    complete: bool
    generators: Tuple[Tuple[int, int, int, int], ...]

    def __len__(self):
        return self.elements.shape[0]


def generate_group(ell, p, m, cap=DEFAULT_GROUP_CAP) -> GroupClosure:
    """Deterministic breadth-first closure, truncated (and flagged) at cap."""
    if ell == p:
        raise UsageError("the Hecke index must differ from p")
    if cap < 4:
        raise UsageError("cap must allow at least the generators")
    mod = Modulus(p, m)
    q = mod.q
    gens = (tuple(x % q for x in _SIGMA), tuple(x % q for x in _TAU),
            (ell % q, 0, 0, 1), (ell % q, 0, 0, ell % q))
    arr = np.array(gens, dtype=np.int64)
    elems, complete = closure_bfs(arr, q, int(cap))
    return GroupClosure(modulus=mod, elements=elems, complete=bool(complete),
                        generators=gens)


def _mat_mul(u, v, q):
    a, b, c, d = u
    e, f, g, h = v
    return ((a * e + b * g) % q, (a * f + b * h) % q,
            (c * e + d * g) % q, (c * f + d * h) % q)


def _orbit(gamma, eps, q):
    """Relation-class orbit of gamma: right powers of eps times ±1."""
    steps = [tuple(x % q for x in _SIGMA)] if eps == "sigma" else \
        [tuple(x % q for x in _TAU), _mat_mul(tuple(x % q for x in _TAU),
                                              tuple(x % q for x in _TAU), q)]
    base = [tuple(gamma)]
    for s in steps:
        base.append(_mat_mul(tuple(gamma), s, q))
    out = set()
    for g in base:
        out.add(g)
        out.add(tuple((q - x) % q for x in g))
    return out


def _canonical_tag(orbit):
    """Representative minimizing (entry sum, lexicographic order)."""
    return min(orbit, key=lambda g: (sum(g), g))


@dataclass(frozen=True)
class RelationClass:
    index: int
    eps: str
    tag: Tuple[int, int, int, int]


def discover_classes(closure: GroupClosure) -> List[RelationClass]:
    """Relation classes in group discovery order, sigma before tau."""
    q = closure.modulus.q
    seen = set()
    out = []
    for row in closure.elements:
        gamma = tuple(int(x) for x in row)
        for eps in ("sigma", "tau"):
            orb = _orbit(gamma, eps, q)
            key = (eps, min(orb))
            if key not in seen:
                seen.add(key)
                out.append(RelationClass(len(out), eps, _canonical_tag(orb)))
    return out


def harvest_relations(i, w, closure: GroupClosure):
    """Deduplicated relation vectors with their class tags at one instance.

    Returns a list of (vector, (tag, eps)) pairs; vectors are mod-p^m
    coefficient lists of the cyclic sums <X^i Y^(w-i) | gamma>_eps.
    """
    if not 0 <= i <= w:
        raise UsageError("need 0 <= i <= w")
    classes = discover_classes(closure)
    rows = _class_rows(classes, i, w, closure.modulus.q)
    out = []
    seen = set()
    for cls, row in zip(classes, rows):
        key = tuple(int(x) for x in row)
        if any(key) and key not in seen:
            seen.add(key)
            out.append((list(key), (cls.tag, cls.eps)))
    return out


def _class_rows(classes, i, w, q):
    """Stacked relation vectors: one row per class at instance (i, w)."""
    mats = []
    counts = []
    for cls in classes:
        g = cls.tag
        if cls.eps == "sigma":
            group = [g, _mat_mul(g, tuple(x % q for x in _SIGMA), q)]
        else:
            t1 = tuple(x % q for x in _TAU)
            t2 = _mat_mul(t1, t1, q)
            group = [g, _mat_mul(g, t1, q), _mat_mul(g, t2, q)]
        mats.extend(group)
        counts.append(len(group))
    arr = np.array(mats, dtype=np.int64)
    rows = poly_action_rows(arr, i, w, q)
    out = np.zeros((len(classes), w + 1), dtype=np.int64)
    pos = 0
    for t, cnt in enumerate(counts):
        out[t] = rows[pos: pos + cnt].sum(axis=0) % q
        pos += cnt
    return out


def _target_row(ell, c, i, w, q):
    from .symbols import heilbronn_merel

    mats = np.array([M.entries() for M in heilbronn_merel(ell)], dtype=np.int64)
    rows = poly_action_rows(mats, i, w, q)
    vec = rows.sum(axis=0) % q
    vec[i] = (vec[i] - c) % q
    return vec


def _representatives(i0, w0, phi, max_instances):
    """Scan order: increasing even w = w0 mod phi, then i = i0 mod phi."""
    out = []
    t = 0
    while len(out) < max_instances and t < 4 * max_instances + 8:
        w = w0 + phi * t
        t += 1
        if w < 2 or w % 2:
            continue
        s = 0
        while True:
            i = i0 + phi * s
            if i > w:
                break
            out.append((i, w))
            s += 1
            if len(out) >= max_instances:
                break
    return out


@dataclass
class SearchOutcome:
    certificate: Optional[Certificate]
    reason: str = ""
    instances_tried: int = 0


def search_identity(i0, w0, table: CongruenceTable, closure: GroupClosure,
                    classes=None, batch=DEFAULT_BATCH,
                    max_instances=DEFAULT_MAX_INSTANCES) -> SearchOutcome:
    """Search one class pair; emit the first certificate that survives
    both the canonical-residual gate and the direct-check gate."""
    q = table.q
    c = table.targets[w0 % table.phi] if table.phi > 1 else table.targets[0]
    if classes is None:
        classes = discover_classes(closure)
    reps = _representatives(i0, w0, table.phi, max_instances)
    if not reps:
        return SearchOutcome(None, "no representatives within budget", 0)

    mod = Modulus(table.p, table.m)
    k_active = min(batch, len(classes))
    rows_per_instance = []      # list of np arrays (k_total_so_far, w+1)
    targets = []
    basis = None
    stacked_dim = 0

    def rebuild():
        nonlocal basis
        basis = HowellBasis(mod, stacked_dim)
        for kk in range(k_active):
            col = np.concatenate([rows[kk] for rows in rows_per_instance])
            basis = basis.insert(col)

    for inst_no, (i, w) in enumerate(reps):
        rows = _class_rows(classes[:k_active], i, w, q)
        rows_per_instance.append(rows)
        targets.append(_target_row(table.ell, c, i, w, q))
        stacked_dim += w + 1
        rebuild()
        target = np.concatenate(targets)
        while True:
            sol = basis.solve(target)
            if sol is None:
                if k_active < len(classes):
                    new_hi = min(k_active + batch, len(classes))
                    for t, (ii, ww) in enumerate(reps[: inst_no + 1]):
                        extra = _class_rows(classes[k_active:new_hi], ii, ww, q)
                        rows_per_instance[t] = np.concatenate(
                            [rows_per_instance[t], extra])
                    for kk in range(k_active, new_hi):
                        col = np.concatenate(
                            [rows[kk] for rows in rows_per_instance])
                        basis = basis.insert(col)
                    k_active = new_hi
                    continue
                suffix = "" if closure.complete else " (group closure truncated)"
                return SearchOutcome(
                    None, "target left the relation span at stack depth "
                    f"{inst_no + 1}{suffix}", inst_no + 1)
            terms = [(sol[k] % q, classes[k].tag, classes[k].eps)
                     for k in sorted(sol)]
            collected = canonical_residuals(table.ell, c, terms, i0, w0,
                                            table.p, table.m)
            if residuals_vanish(collected):
                cert = Certificate(
                    i0=i0, w0=w0, c=c,
                    terms=tuple(CertTerm(alpha, gamma, eps)
                                for alpha, gamma, eps in terms),
                    residual_tags=tuple(residual_tags(collected)))
                ok = all(verify_certificate_direct(cert, table.ell, table.p,
                                                   table.m, ip, wp)
                         for ip, wp in check_instances(cert, table.p, table.m))
                if not ok:
                    raise AssertionError(
                        "canonical residuals vanished but a direct check "
                        "failed; canonicalization is unsound")
                return SearchOutcome(cert, "", inst_no + 1)
            break  # not universal yet: stack the next representative
    return SearchOutcome(None, f"no universal solution after "
                         f"{len(reps)} representatives", len(reps))


def class_pairs(table: CongruenceTable):
    """All (i0, w0) pairs handled by prove_table, in output order.

    w0 runs over the table keys.  i0 runs over the even residues; when
    phi(p^m) = 2 the odd class is included as well, mirroring the
    two-parity presentation of the mod-3 base case.
    """
    phi = table.phi
    if phi == 1:
        i0s = [0]
    elif phi == 2:
        i0s = [0, 1]
    else:
        i0s = list(range(0, phi, 2))
    return [(i0, w0) for w0 in sorted(table.targets) for i0 in i0s]


@dataclass
class ProveReport:
    table: CongruenceTable
    certificates: List[Certificate]
    failures: List[dict]
    group_size: int
    group_complete: bool

    @property
    def ok(self):
        return not self.failures

    def to_file(self) -> CertificateFile:
        return CertificateFile(
            ell=self.table.ell, p=self.table.p, m=self.table.m,
            certificates=tuple(self.certificates),
            failures=tuple(self.failures))


def prove_table(table: CongruenceTable, group_cap=DEFAULT_GROUP_CAP,
                batch=DEFAULT_BATCH, max_instances=DEFAULT_MAX_INSTANCES,
                threads=None) -> ProveReport:
    """One certificate per class pair, or an explicit failure entry."""
    closure = generate_group(table.ell, table.p, table.m, cap=group_cap)
    classes = discover_classes(closure)
    pairs = class_pairs(table)
    if threads is None:
        threads = min(len(pairs), os.cpu_count() or 1)

    def work(pair):
        i0, w0 = pair
        return pair, search_identity(i0, w0, table, closure, classes=classes,
                                     batch=batch, max_instances=max_instances)

    results = {}
    if threads > 1 and len(pairs) > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            for pair, outcome in pool.map(work, pairs):
                results[pair] = outcome
    else:
        for pair in pairs:
            results[pair] = work(pair)[1]

    certs = []
    failures = []
    for pair in pairs:
        outcome = results[pair]
        if outcome.certificate is not None:
            certs.append(outcome.certificate)
        else:
            failures.append({"i0": pair[0], "w0": pair[1],
                             "reason": outcome.reason,
                             "instances_tried": outcome.instances_tried})
    return ProveReport(table=table, certificates=certs, failures=failures,
                       group_size=len(closure),
                       group_complete=closure.complete)
