"""Parametric case LPs, an exact simplex and dual-certificate verification."""

from .certificates import (C4_INTERVAL, C5_INTERVAL, FAIL, PASS, SPLIT_G0, SPLIT_G3,
                           THEOREM_MARGIN, CaseBoundError, CertificateReport, CheckResult,
                           DualCertificate, DualitySample, MarginResult, bd3_expr,
                           builtin_certificates, case_bound_G1_empty, certificate_by_id,
                           certificate_checks, check_certificate, constraint_families_from_claims,
                           covers, dual_column, dual_objective, g1_empty_bound_expr,
                           printed_variants, prove_G1_empty_case, sample_points, simplex_max,
                           theorem_margin_report, weak_duality_check)
from .model import ParamLP, Row
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, SimplexResult, simplex

__all__ = [name for name in dir() if not name.startswith("_")]
