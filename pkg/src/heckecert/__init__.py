"""Exact-arithmetic certificates for Hecke eigenvalue congruences of
level-1 modular forms, plus eigenform enumerations over Z/4 and Z/9."""

from .ring import (HowellBasis, IntMatrix, Modulus, Residue, UsageError,
                   charpoly, howell_insert, newton_slopes_at_least,
                   newton_slopes_greater, smith_normal_form, solve_in_span)
from .symbols import (HomogPoly, Mat2, SymbolSpace, act, build_space,
                      cyc_sigma, cyc_tau, eigenvalue_congruence,
                      hecke_matrix, hecke_on_poly, heilbronn_merel,
                      involution)
from .qseries import (GradedBasis, QSeries, bernoulli, d_series, delta,
                      eisenstein, ek_congruence_check, gamma0_2_basis,
                      hecke_qexp, level1_basis, sigma_power, sturm_bound,
                      u_op, v_op, victor_miller)
from .prover import (CongruenceTable, GroupClosure, generate_group,
                     harvest_relations, prove_table, search_identity)
from .canonical import canonicalize
from .certio import Certificate, CertificateFile, CertTerm
from .verifier import verify_certificate_direct, verify_file
from .dcweak import (DcForm4, DcForm9, EigenSignature, hecke_on_form,
                     is_eigenform, kolberg_check, qexp_of_form4,
                     qexp_of_form9, search_mod4, search_mod9, t_lambda,
                     to_delta_poly, verify_mab_elements)

__version__ = "0.1.0"
