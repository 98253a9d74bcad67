"""Named invariant polynomials on the four-dimensional critical subspace A.

Coordinates ``z = (z0, z1, z2, z3)`` are taken in the ``u``-basis of A (see
:mod:`qinv.qstate`).  The symmetric generators are

* ``E(0) = z0 z1 z2 z3`` and ``E(j) = sum_i z_i**(2j)`` for ``j = 1..4``;
* ``F(k) = (1/6) sum_{i<j} [(z_i - z_j)**(2k) + (z_i + z_j)**(2k)]``;
* ``delta() = prod_{i<j} (z_i - z_j)(z_i + z_j)`` and the hyperdeterminant
  ``gamma() = delta()**2``.

All constructors return exact :class:`~qinv.exact_poly.MultiPoly` objects and
are cached, so repeated calls share one immutable instance.
"""
from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exact_poly import MultiPoly, poly_eval, variables
from .validation import check_acoords

PAIRS = tuple(itertools.combinations(range(4), 2))
GENERATOR_DEGREES = {1: 2, 3: 6, 4: 8, 6: 12}

OMEGA = cmath.exp(1j * cmath.pi / 3)
Z_L = np.array([1, OMEGA, OMEGA.conjugate(), 0], dtype=np.complex128) / np.sqrt(3)
_S3 = np.sqrt(3)
# unnormalised, as printed
Z_F = np.array([3 - _S3, (1 + 1j) * _S3, (1 - 1j) * _S3, -1j * (3 - _S3)], dtype=np.complex128)
GAMMA_AT_L = Fraction(-1, 3**9)


@lru_cache(maxsize=None)
def E(j: int) -> MultiPoly:
    """``E(0) = z0 z1 z2 z3``; ``E(j)`` the power sum of ``z_i**(2j)``, ``1 <= j <= 4``."""
    if j not in (0, 1, 2, 3, 4):
        raise ValueError(f"E(j) is defined for j in 0..4, got {j!r}")
    z = variables()
    if j == 0:
        return z[0] * z[1] * z[2] * z[3]
    return sum((MultiPoly.monomial([2 * j if i == k else 0 for i in range(4)]) for k in range(4)),
               MultiPoly.zero())


@lru_cache(maxsize=None)
def F(k: int) -> MultiPoly:
    """Symmetric generator of degree ``2k``; ``1 <= k <= 12``."""
    if not isinstance(k, int) or not 1 <= k <= 12:
        raise ValueError(f"F(k) is defined for 1 <= k <= 12, got {k!r}")
    z = variables()
    total = MultiPoly.zero()
    for i, j in PAIRS:
        total = total + (z[i] - z[j]) ** (2 * k) + (z[i] + z[j]) ** (2 * k)
    return total / 6


@lru_cache(maxsize=None)
def delta() -> MultiPoly:
    """Degree-12 product of all ``z_i - z_j`` and ``z_i + z_j``, ``i < j``."""
    z = variables()
    out = MultiPoly.const(1)
    for i, j in PAIRS:
        out = out * (z[i] * z[i] - z[j] * z[j])
    return out


@lru_cache(maxsize=None)
def gamma() -> MultiPoly:
    """The degree-24 hyperdeterminant restricted to A."""
    d = delta()
    return d * d


def power_sums(kmax: int = 12) -> list[MultiPoly]:
    """``p_m`` of the twelve quantities ``(z_i -+ z_j)**2``, ``m = 1..kmax``.

    Each equals ``6 F(m)``.
    """
    return [F(m) * 6 for m in range(1, kmax + 1)]


def newton_elementary(power: list[MultiPoly]) -> list[MultiPoly]:
    """Elementary symmetric polynomials ``e_0..e_n`` from power sums ``p_1..p_n``.

    Uses ``k e_k = sum_{m=1}^{k} (-1)**(m-1) e_{k-m} p_m``.
    """
    e = [MultiPoly.const(1)]
    for k in range(1, len(power) + 1):
        acc = MultiPoly.zero()
        for m in range(1, k + 1):
            term = e[k - m] * power[m - 1]
            acc = acc + term if m % 2 else acc - term
        e.append(acc / k)
    return e


@lru_cache(maxsize=None)
def gamma_via_newton() -> MultiPoly:
    """``gamma`` rebuilt as ``e_12`` of the twelve squared linear forms."""
    return newton_elementary(power_sums(12))[12]


def jacobian_det(polys: list[MultiPoly]) -> MultiPoly:
    """Exact determinant of the 4x4 matrix ``d polys[r] / d z_c``."""
    if len(polys) != 4:
        raise ValueError("need exactly four polynomials")
    rows = [[p.diff(c) for c in range(4)] for p in polys]
    total = MultiPoly.zero()
    for perm in itertools.permutations(range(4)):
        sign = _perm_sign(perm)
        term = rows[0][perm[0]] * rows[1][perm[1]] * rows[2][perm[2]] * rows[3][perm[3]]
        total = total + term if sign > 0 else total - term
    return total


def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def jacobian_F() -> MultiPoly:
    """Jacobian determinant of ``F(1), F(3), F(4), F(6)``; nonzero."""
    return jacobian_det([F(1), F(3), F(4), F(6)])


def delta_product(z) -> complex:
    """Float value of ``delta`` from its factored form."""
    z = np.asarray(z, dtype=np.complex128)
    return complex(np.prod([z[i] ** 2 - z[j] ** 2 for i, j in PAIRS]))


@dataclass(frozen=True)
class InvariantReport:
    """Values of the named invariants at one point of A."""

    E0: complex
    E1: complex
    E2: complex
    E3: complex
    F1: complex
    F3: complex
    F4: complex
    F6: complex
    delta: complex
    gamma: complex

    FIELDS = ("E0", "E1", "E2", "E3", "F1", "F3", "F4", "F6", "delta", "gamma")

    def to_dict(self) -> dict:
        return {name: [getattr(self, name).real, getattr(self, name).imag] for name in self.FIELDS}

    @classmethod
    def from_dict(cls, data: dict) -> "InvariantReport":
        return cls(**{name: complex(*data[name]) for name in cls.FIELDS})


def eval_invariants(z) -> InvariantReport:
    """Evaluate every generator at ``z`` (A-coordinates).

    ``delta`` is computed from its product form, which avoids the
    cancellation of the 455-term monomial expansion; ``gamma`` is its square.
    """
    z = check_acoords(z)
    values = {f"E{j}": poly_eval(E(j), z) for j in range(4)}
    values.update({f"F{k}": poly_eval(F(k), z) for k in (1, 3, 4, 6)})
    d = delta_product(z)
    return InvariantReport(**values, delta=d, gamma=d * d)
