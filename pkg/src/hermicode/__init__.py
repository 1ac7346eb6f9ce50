"""Hermitian forms over F_{t^2}, exact character sums, trace-equation counts,
and the trace codes Gamma and C."""

from .charsum import CycInt, char_sum_linear, count_via_characters, exp_sum, norm_char_sum, psi
from .codes import (
    BudgetExceeded,
    CodeParams,
    LinearCode,
    build_C,
    build_gamma,
    compare,
    rm_params,
    weight_distribution,
)
from .counting import (
    CountReport,
    TheoremMismatch,
    brute_S,
    closed_S,
    count_trace_affine,
    count_trace_level,
)
from .gf import FieldCtx, SubfieldError, TowerError, TowerSpec, build_tower
from .hermitian import HermitianForm, NotHermitianError, Subspace, orthogonalize, polar_form
from .quadform import QuadHermForm, iota, iota_inv, standard_form, t_map

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CodeParams",
    "CountReport",
    "CycInt",
    "FieldCtx",
    "HermitianForm",
    "LinearCode",
    "NotHermitianError",
    "QuadHermForm",
    "Subspace",
    "SubfieldError",
    "TheoremMismatch",
    "TowerError",
    "TowerSpec",
    "brute_S",
    "build_C",
    "build_gamma",
    "build_tower",
    "char_sum_linear",
    "closed_S",
    "compare",
    "count_trace_affine",
    "count_trace_level",
    "count_via_characters",
    "exp_sum",
    "iota",
    "iota_inv",
    "norm_char_sum",
    "orthogonalize",
    "polar_form",
    "psi",
    "rm_params",
    "standard_form",
    "t_map",
    "weight_distribution",
]
