"""scikit-learn compatible wrappers.

Rows of ``X`` are points of A (4 complex coordinates) or, for
:class:`GenericityClassifier`, full 4-qubit states (16 amplitudes).
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import invariants as inv
from . import qstate as qs
from .exact_poly import NumericPoly
from .optimizer import OptConfig, maximize_abs_gamma
from .validation import _as_complex, check_acoords_2d

FEATURES = ("E0", "E1", "E2", "E3", "E4", "F1", "F3", "F4", "F6", "delta", "gamma")
_DEGREE = {"E0": 4, "E1": 2, "E2": 4, "E3": 6, "E4": 8, "F1": 2, "F3": 6, "F4": 8, "F6": 12,
           "delta": 12, "gamma": 24}


def _feature_poly(name: str):
    if name.startswith("E"):
        return inv.E(int(name[1:]))
    if name.startswith("F"):
        return inv.F(int(name[1:]))
    return None


class InvariantTransformer(TransformerMixin, BaseEstimator):
    """Map A-points to values of the symmetric invariants.

    Parameters
    ----------
    features : sequence of str, default ("F1", "F3", "F4", "F6")
        Names from ``E0..E4``, ``F1, F3, F4, F6``, ``delta``, ``gamma``.
    normalize : bool, default False
        Evaluate at ``z / |z|`` instead of ``z``.

    Output is a complex array of shape ``(n_samples, len(features))``.
    """

    def __init__(self, features=("F1", "F3", "F4", "F6"), normalize=False):
        self.features = features
        self.normalize = normalize

    def fit(self, X, y=None):
        check_acoords_2d(X)
        unknown = [f for f in self.features if f not in FEATURES]
        if unknown:
            raise ValueError(f"unknown features {unknown}; choose from {FEATURES}")
        self.n_features_in_ = 4
        self.features_ = tuple(self.features)
        self._evaluators = {f: _feature_poly(f).compile() for f in self.features_ if _feature_poly(f)}
        return self

    def transform(self, X):
        check_is_fitted(self, "features_")
        Z = check_acoords_2d(X)
        if self.normalize:
            Z = Z / np.linalg.norm(Z, axis=1, keepdims=True)
        cols = []
        for f in self.features_:
            if f in ("delta", "gamma"):
                d = np.array([inv.delta_product(z) for z in Z])
                cols.append(d if f == "delta" else d * d)
            else:
                ev: NumericPoly = self._evaluators[f]
                cols.append(ev(Z))
        return np.column_stack(cols)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "features_")
        return np.array(self.features_, dtype=object)

    def degrees(self) -> list[int]:
        return [_DEGREE[f] for f in self.features]


class GenericityClassifier(ClassifierMixin, BaseEstimator):
    """Predict whether 4-qubit states have a 12-dimensional G-orbit.

    Stateless apart from input bookkeeping; ``fit`` only validates.  Rows
    may be A-coordinates (4 columns) or full states (16 columns).

    Parameters
    ----------
    rtol : float, default 1e-8
        Singular values below ``rtol`` times the largest count as zero.
    """

    def __init__(self, rtol=1e-8):
        self.rtol = rtol

    def _states(self, X) -> np.ndarray:
        arr = _as_complex(X, "X")
        if arr.ndim == 1:
            arr = arr[None, :]
        if arr.ndim != 2 or arr.shape[1] not in (4, 16):
            raise ValueError(f"X: expected shape (n_samples, 4) or (n_samples, 16), got {arr.shape}")
        if arr.shape[1] == 4:
            arr = arr @ qs.U_BASIS.astype(np.complex128)
        if np.any(~arr.any(axis=1)):
            raise ValueError("X: zero state")
        return arr

    def fit(self, X, y=None):
        arr = self._states(X)
        self.n_features_in_ = _as_complex(X, "X").reshape(len(arr), -1).shape[1]
        self.classes_ = np.array([False, True])
        return self

    def orbit_dims(self, X) -> np.ndarray:
        return np.array([qs.orbit_dim(psi, self.rtol) for psi in self._states(X)])

    def predict(self, X):
        check_is_fitted(self, "classes_")
        return self.orbit_dims(X) == qs.MAX_ORBIT_DIM

    def decision_function(self, X):
        """log10 of the smallest-to-largest singular value ratio, shifted by ``log10(rtol)``."""
        check_is_fitted(self, "classes_")
        out = []
        for psi in self._states(X):
            s = qs.orbit_singular_values(psi)
            out.append(np.log10(max(s[-1] / s[0], 1e-300)) - np.log10(self.rtol))
        return np.array(out)


class GammaMaximizer(BaseEstimator):
    """Multi-start maximiser of ``|gamma|`` on the unit sphere of A.

    ``fit`` ignores its data; the fitted attributes are ``best_z_``,
    ``best_value_``, ``grad_residual_`` and the full ``result_``.
    """

    def __init__(self, restarts=50, max_iters=500, step=0.5, tol_grad=1e-10, seed=1):
        self.restarts = restarts
        self.max_iters = max_iters
        self.step = step
        self.tol_grad = tol_grad
        self.seed = seed

    def fit(self, X=None, y=None):
        cfg = OptConfig(restarts=self.restarts, max_iters=self.max_iters, step=self.step,
                        tol_grad=self.tol_grad, seed=self.seed)
        self.result_ = maximize_abs_gamma(cfg)
        self.best_z_ = self.result_.best_z
        self.best_value_ = self.result_.best_value
        self.grad_residual_ = self.result_.grad_residual
        return self

    def score(self, X=None, y=None) -> float:
        """Best ``|gamma|`` found."""
        check_is_fitted(self, "result_")
        return self.best_value_
