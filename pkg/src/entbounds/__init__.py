"""Concurrence measures and tightened monogamy / polygamy bounds for small qubit systems."""

from __future__ import annotations

from .errors import DomainError, EntboundsError, NumericalError, PreconditionError, SizingError
from .linalg import DensityMatrix, PureState, hermitian_eigenvalues, hermitian_eigh, partial_trace, tensor_product
from .measures import (
    MeasureValue,
    coa_two_qubit,
    concurrence_pure,
    concurrence_two_qubit,
    three_qubit_profile,
    wootters_lambdas,
)
from .relations import (
    BoundParams,
    BoundReport,
    MeasureVector,
    PreconditionReport,
    check_monogamy_preconditions,
    check_polygamy_preconditions,
    prior_bound_ref33_monogamy,
    prior_bound_ref33_polygamy,
    prior_bound_ref37_monogamy,
    thm1_lower_bound,
    thm2_lower_bound,
    thm3_lower_bound,
    thm4_upper_bound,
    thm5_upper_bound,
)
from .states import (
    ThreeQubitCanonical,
    build_canonical,
    example1_monogamy_state,
    example1_polygamy_state,
    sample_haar_pure,
)

__version__ = "0.1.0"

__all__ = [
    "BoundParams",
    "BoundReport",
    "DensityMatrix",
    "DomainError",
    "EntboundsError",
    "MeasureValue",
    "MeasureVector",
    "NumericalError",
    "PreconditionError",
    "PreconditionReport",
    "PureState",
    "SizingError",
    "ThreeQubitCanonical",
    "build_canonical",
    "check_monogamy_preconditions",
    "check_polygamy_preconditions",
    "coa_two_qubit",
    "concurrence_pure",
    "concurrence_two_qubit",
    "example1_monogamy_state",
    "example1_polygamy_state",
    "hermitian_eigenvalues",
    "hermitian_eigh",
    "partial_trace",
    "prior_bound_ref33_monogamy",
    "prior_bound_ref33_polygamy",
    "prior_bound_ref37_monogamy",
    "sample_haar_pure",
    "tensor_product",
    "thm1_lower_bound",
    "thm2_lower_bound",
    "thm3_lower_bound",
    "thm4_upper_bound",
    "thm5_upper_bound",
    "three_qubit_profile",
    "wootters_lambdas",
]
