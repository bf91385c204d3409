"""Exact-arithmetic toolkit for conjugacy relative to a function class,
inf-convolution duality, and the lift of minimization problems to the
probability simplex over a finite ground space."""

from .core import (
    INF,
    ExtFun,
    Measure,
    PosInf,
    Space,
    classify_measure,
    constant,
    dirac,
    in_simplex,
    indicator,
    is_finite,
    pairing,
    rat,
    zero,
)
from .cones import (
    FunctionClass,
    Membership,
    check_property_H,
    check_property_H_all,
    contains,
    finite_cone,
    full_class,
    lipschitz_cone,
    separates_points,
)
from .duality import (
    ConjugateValue,
    biconjugate,
    check_biconjugation,
    check_infconv_theorem,
    conjugate,
    infconv_eval,
    insert_between,
    minimax_identity_check,
    minorant_envelope,
    sum_decompose,
)
from .transform import (
    DeltaSet,
    TransformedFunction,
    check_cone_morphism,
    check_constant_transform,
    check_isotone,
    check_translation,
    delta_set_to_function,
    fenchel_transform,
    function_to_delta_set,
    minimize_equivalence,
    minimizing_sequence_lift,
    perturbation_principle,
    sample_simplex_measures,
    support_function,
    transform_T,
)
from .oracle import GridSpec, grid_inf_convolution, grid_sup_conjugate_transform, vertex_enumerate_min

__all__ = [name for name in dir() if not name.startswith("_")]
