"""Input validation helpers shared by the functional API and the estimators."""
from __future__ import annotations

import numpy as np


def _as_complex(x, name: str) -> np.ndarray:
    try:
        arr = np.asarray(x, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name}: expected numeric data ({exc})") from exc
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: non-finite entries")
    return arr


def check_acoords(z, name: str = "z") -> np.ndarray:
    """Validate one point of A given as 4 complex coordinates."""
    arr = _as_complex(z, name)
    if arr.shape != (4,):
        raise ValueError(f"{name}: expected 4 A-coordinates, got shape {arr.shape}")
    return arr


def check_acoords_2d(X, name: str = "X") -> np.ndarray:
    """Validate a batch of A-points, shape ``(n_samples, 4)``.

    A single 1-d point is promoted to a batch of one.
    """
    arr = _as_complex(X, name)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != 4:
        raise ValueError(f"{name}: expected shape (n_samples, 4), got {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError(f"{name}: empty input")
    return arr


def check_state(psi, n: int | None = None, name: str = "psi") -> np.ndarray:
    """Validate a state vector of length ``2**n``; returns a complex copy."""
    arr = _as_complex(psi, name)
    if arr.ndim != 1 or arr.size < 2 or arr.size & (arr.size - 1):
        raise ValueError(f"{name}: length must be a power of two >= 2, got shape {arr.shape}")
    nq = arr.size.bit_length() - 1
    if n is not None and nq != n:
        raise ValueError(f"{name}: expected {n} qubits, got {nq}")
    return arr


def n_qubits(psi: np.ndarray) -> int:
    return int(psi.size).bit_length() - 1


def check_nonzero(psi: np.ndarray, name: str = "psi") -> None:
    if not np.any(psi):
        raise ValueError(f"{name}: zero vector")
