"""Determinantal representations to algebraic branching programs, exactly."""
from .abp import (
    Abp,
    LinMatrix,
    ScalarAbp,
    abp_eval,
    abp_substitute,
    abp_sum,
    abp_to_poly,
    geometric_series_block,
    homogenize_component,
    mv97_det_abp,
)
from .algebra import GF_DEFAULT, QQ, FieldSpec, LinearForm, Poly, Scalar, prime_field
from .convert import (
    ConversionReport,
    abp_to_pencil,
    build_W,
    check_regular_vanishing,
    general_to_abp,
    regular_to_abp,
)
from .instgen import elem_sym_abp, power_sum_abp, random_hom_abp, synth_r_regular_pencil
from .pencil import NormalFormPencil, Pencil, blocks, constant_rank, normal_form, pencil_eval_det
from .verify import certify_homogeneous, pit_equal, schur_self_test, symbolic_det

__version__ = "0.1.0"

__all__ = [
    "Abp",
    "LinMatrix",
    "ScalarAbp",
    "abp_eval",
    "abp_substitute",
    "abp_sum",
    "abp_to_poly",
    "geometric_series_block",
    "homogenize_component",
    "mv97_det_abp",
    "GF_DEFAULT",
    "QQ",
    "FieldSpec",
    "LinearForm",
    "Poly",
    "Scalar",
    "prime_field",
    "ConversionReport",
    "abp_to_pencil",
    "build_W",
    "check_regular_vanishing",
    "general_to_abp",
    "regular_to_abp",
    "elem_sym_abp",
    "power_sum_abp",
    "random_hom_abp",
    "synth_r_regular_pencil",
    "NormalFormPencil",
    "Pencil",
    "blocks",
    "constant_rank",
    "normal_form",
    "pencil_eval_det",
    "certify_homogeneous",
    "pit_equal",
    "schur_self_test",
    "symbolic_det",
    "AbpToPencil",
    "DeterminantToABP",
    "HomogeneousComponent",
]

_ESTIMATORS = ("AbpToPencil", "DeterminantToABP", "HomogeneousComponent")


def __getattr__(name):
    # scikit-learn is slow to import, so the estimators load on first use
    if name in _ESTIMATORS:
        from . import estimators

        return getattr(estimators, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
