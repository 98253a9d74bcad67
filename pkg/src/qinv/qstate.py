"""Numeric multi-qubit states, local SL(2,C) actions and small-system invariants.

States are plain complex numpy vectors of length ``2**n``.  Indexing is
big-endian: qubit 0 is the most significant bit, so ``|0011>`` is index 3.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .validation import check_acoords, check_nonzero, check_state, n_qubits

# u-basis of A, rows u0..u3 as 16-amplitude vectors
U_BASIS = np.zeros((4, 16))
for _row, _kets, _signs in (
    (0, ("0000", "0011", "1100", "1111"), (1, 1, 1, 1)),
    (1, ("0000", "0011", "1100", "1111"), (1, -1, -1, 1)),
    (2, ("0101", "0110", "1001", "1010"), (1, 1, 1, 1)),
    (3, ("0101", "0110", "1001", "1010"), (1, -1, -1, 1)),
):
    for _ket, _s in zip(_kets, _signs):
        U_BASIS[_row, int(_ket, 2)] = 0.5 * _s

SL2_BASIS = (
    np.array([[0, 1], [0, 0]], dtype=np.complex128),
    np.array([[0, 0], [1, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

RANK_RTOL = 1e-8
MAX_ORBIT_DIM = 12


def basis_state(bits: str) -> np.ndarray:
    """Computational basis ket such as ``"0101"``."""
    psi = np.zeros(2 ** len(bits), dtype=np.complex128)
    psi[int(bits, 2)] = 1
    return psi


def embed_A(z) -> np.ndarray:
    """The 4-qubit state ``sum_i z_i u_i``."""
    z = check_acoords(z)
    return z @ U_BASIS.astype(np.complex128)


def project_A(psi) -> np.ndarray:
    """A-coordinates of the orthogonal projection of ``psi`` onto A."""
    psi = check_state(psi, 4)
    return U_BASIS @ psi


@dataclass(frozen=True)
class LocalOp:
    """Tensor product ``g_0 (x) ... (x) g_{n-1}`` of 2x2 matrices with unit determinant."""

    factors: tuple[np.ndarray, ...]

    def __post_init__(self):
        facs = tuple(np.asarray(f, dtype=np.complex128) for f in self.factors)
        for k, f in enumerate(facs):
            if f.shape != (2, 2):
                raise ValueError(f"factor {k} must be 2x2, got {f.shape}")
            if abs(np.linalg.det(f) - 1) > 1e-10:
                raise ValueError(f"factor {k} is not in SL(2,C): det = {np.linalg.det(f)}")
        object.__setattr__(self, "factors", facs)

    @property
    def n(self) -> int:
        return len(self.factors)

    @classmethod
    def identity(cls, n: int) -> "LocalOp":
        return cls(tuple(np.eye(2) for _ in range(n)))


def random_sl2(rng: np.random.Generator) -> np.ndarray:
    """Random element of SL(2,C): Gaussian matrix rescaled by a square root of its determinant."""
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        d = np.linalg.det(m)
        if abs(d) > 0.1:
            return m / np.sqrt(d)


def random_local_op(n: int, rng: np.random.Generator) -> LocalOp:
    return LocalOp(tuple(random_sl2(rng) for _ in range(n)))


def apply_single(op: np.ndarray, psi: np.ndarray, slot: int) -> np.ndarray:
    """Apply a 2x2 matrix to one tensor slot without forming the full operator."""
    n = n_qubits(psi)
    t = psi.reshape((2,) * n)
    t = np.tensordot(op, t, axes=([1], [slot]))
    return np.moveaxis(t, 0, slot).reshape(-1)


def apply_local(g: LocalOp, psi) -> np.ndarray:
    """``(g_0 (x) ... (x) g_{n-1}) psi`` by per-slot contraction."""
    psi = check_state(psi)
    if g.n != n_qubits(psi):
        raise ValueError(f"operator acts on {g.n} qubits, state has {n_qubits(psi)}")
    for slot, f in enumerate(g.factors):
        psi = apply_single(f, psi, slot)
    return psi


def permute_qubits(psi, perm) -> np.ndarray:
    """State whose qubit ``k`` is qubit ``perm[k]`` of ``psi``."""
    psi = check_state(psi)
    n = n_qubits(psi)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm!r} is not a permutation of {n} qubits")
    return np.transpose(psi.reshape((2,) * n), perm).reshape(-1)


def _sigma_y_signs(n: int) -> np.ndarray:
    # <b| sigma_y^{(x)n} |complement b>: each slot contributes -i if b_k = 0, +i if b_k = 1
    idx = np.arange(2**n)
    ones = np.array([bin(i).count("1") for i in idx])
    return (-1j) ** (n - ones) * (1j) ** ones


def bilinear_form(psi, phi=None) -> complex:
    """``(psi, phi) = <psi*| sigma_y^{(x)n} |phi>``; no conjugation of amplitudes.

    With one argument this is the two-qubit ``f2`` generalised to any even
    ``n``.  For a 4-qubit state in A it reduces to ``sum z_i**2``.
    """
    psi = check_state(psi)
    n = n_qubits(psi)
    phi = psi if phi is None else check_state(phi, n, name="phi")
    if n % 2:
        raise ValueError(f"bilinear form needs an even number of qubits, got {n}")
    comp = (2**n - 1) - np.arange(2**n)
    return complex(np.sum(_sigma_y_signs(n) * psi * phi[comp]))


def f2(psi) -> complex:
    """Two-qubit invariant; its modulus is the concurrence."""
    return bilinear_form(check_state(psi, 2))


def f4(psi, slot: int = 0) -> complex:
    """Three-qubit invariant: Gram determinant of the two-qubit slices along ``slot``."""
    psi = check_state(psi, 3)
    t = np.moveaxis(psi.reshape(2, 2, 2), slot, 0).reshape(2, 4)
    p0, p1 = t[0], t[1]
    b01 = bilinear_form(p0, p1)
    return bilinear_form(p0) * bilinear_form(p1) - b01 * bilinear_form(p1, p0)


def tangent_vectors(psi) -> np.ndarray:
    """Columns ``X psi`` for the 3n single-slot sl(2) basis operators ``X``."""
    psi = check_state(psi)
    n = n_qubits(psi)
    cols = [apply_single(x, psi, slot) for slot in range(n) for x in SL2_BASIS]
    return np.stack(cols, axis=1)


def orbit_singular_values(psi) -> np.ndarray:
    psi = check_state(psi, 4)
    check_nonzero(psi)
    psi = psi / np.linalg.norm(psi)
    return np.linalg.svd(tangent_vectors(psi), compute_uv=False)


def orbit_dim(psi, rtol: float = RANK_RTOL) -> int:
    """Complex dimension of the G-orbit through a 4-qubit state.

    Numerical rank of the 12 tangent vectors of the unit-normalised state,
    counting singular values above ``rtol`` times the largest.
    """
    s = orbit_singular_values(psi)
    return int(np.sum(s > rtol * s[0]))


def is_generic(psi, rtol: float = RANK_RTOL) -> bool:
    """True iff the orbit dimension is maximal (12)."""
    return orbit_dim(psi, rtol) == MAX_ORBIT_DIM


def named_state(name: str) -> np.ndarray:
    """A few reference states: ``bell``, ``ghz``, ``w``."""
    if name == "bell":
        return (basis_state("00") + basis_state("11")) / np.sqrt(2)
    if name == "ghz":
        return (basis_state("000") + basis_state("111")) / np.sqrt(2)
    if name == "w":
        return (basis_state("001") + basis_state("010") + basis_state("100")) / np.sqrt(3)
    raise ValueError(f"unknown state {name!r}")


def transposition_perm(i: int, n: int = 4) -> list[int]:
    """Axis permutation swapping qubits ``i`` and ``i+1`` (numbered from 1)."""
    perm = list(range(n))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return perm


def degenerate_points(rng: np.random.Generator, count: int) -> np.ndarray:
    """Random A-points with one forced coincidence ``z_i = +-z_j``."""
    pairs = list(itertools.combinations(range(4), 2))
    out = np.empty((count, 4), dtype=np.complex128)
    for k in range(count):
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        i, j = pairs[k % len(pairs)]
        z[j] = z[i] if (k // len(pairs)) % 2 == 0 else -z[i]
        out[k] = z
    return out
