"""Symmetric SL-invariant polynomials of four qubits.

Exact polynomial algebra on the critical subspace A, the reflection group
behind the symmetric invariants, numeric multi-qubit states and a sphere
optimiser for the hyperdeterminant.
"""
from .estimators import GammaMaximizer, GenericityClassifier, InvariantTransformer
from .exact_poly import MultiPoly, poly_diff, poly_eval, poly_eval_exact, poly_mul, poly_subst_linear
from .invariants import (
    E, F, InvariantReport, Z_F, Z_L, delta, eval_invariants, gamma, gamma_via_newton, jacobian_F,
)
from .optimizer import OptConfig, OptResult, critical_residual, maximize_abs_gamma, sphere_hessian_spectrum
from .qstate import LocalOp, apply_local, bilinear_form, embed_A, f2, f4, is_generic, orbit_dim
from .reflection_group import (
    ClosureError, GroupElement, GroupSet, check_delta_equivariance, generate_closure, is_invariant,
    reflection, sigma_restriction,
)

__version__ = "0.1.0"
