"""Exact conversion between complex and real multiple Wiener-Ito integrals."""

from .chaos import (
    ComplexChaos, CoordinateSample, RealChaos, derivative_complex, derivative_real,
    eval_complex, eval_real, expectation, multiply_complex, multiply_real, stroock_complex, stroock_real,
)
from .convert import (
    density_check, forward_closed_form, forward_recursive, forward_stroock, inverse,
    single_chaos_condition, split_uv, vk_vector,
)
from .hermite import complex_hermite, hermite, real_pair_to_J_coeffs
from .scalar import I, ModeError, Scalar
from .tensor_core import (
    ComplexKernel, DomainError, Label, RealKernel, U, V, conjugate, contract_complex,
    contract_real, inner_product, monomial, symm_product,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexChaos", "CoordinateSample", "RealChaos", "derivative_complex", "derivative_real",
    "eval_complex", "eval_real", "expectation", "multiply_complex", "multiply_real", "stroock_complex",
    "stroock_real", "density_check", "forward_closed_form", "forward_recursive",
    "forward_stroock", "inverse", "single_chaos_condition", "split_uv", "vk_vector", "complex_hermite",
    "hermite", "real_pair_to_J_coeffs", "I", "ModeError", "Scalar", "ComplexKernel",
    "DomainError", "Label", "RealKernel", "U", "V", "conjugate", "contract_complex",
    "contract_real", "inner_product", "monomial", "symm_product",
]
