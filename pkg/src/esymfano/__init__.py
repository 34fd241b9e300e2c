"""Exact toolkit for planes on Z(E_{m-1}) and finite-group polynomial invariants."""

from .fields import QQ, FieldError, PrimeField, RationalField, field_from_descriptor
from .poly import (
    LinearForm,
    Polynomial,
    coefficient_extraction,
    elem_sym,
    esym_top_at_forms,
    poly_eval,
    substitute_linear_forms,
)
from .fano import (
    BudgetExceeded,
    Chart,
    MembershipVerdict,
    PartitionCertificate,
    PlaneMatrix,
    ZeroPair,
    brute_force_members,
    charts_covering,
    classify,
    cross_check,
    enumerate_isolated,
    expected_dimension,
    fano_chart_equations,
    is_member_direct,
    matchings,
    reciprocal_relation_space,
    sample_member,
    stratum_dimension,
    verify_certificate,
)
from .invariants import (
    ClosureBudgetExceeded,
    GroupAction,
    NotInvariantSet,
    PermutationAction,
    check_equivariance,
    close_group,
    derive_permutation_rep,
    generation_check,
    invariant_dim,
    is_invariant,
    orbit_chern,
    orbit_of_form,
    pullback_symmetric,
    reynolds,
    subalgebra_graded_dims,
    z2_counterexample_report,
)

__all__ = [name for name in dir() if not name.startswith("_")]
