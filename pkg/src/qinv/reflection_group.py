"""Exact reflections on A and the finite groups W and W-tilde.

Group elements are 4x4 matrices of :class:`fractions.Fraction` acting on
A-coordinates.  Exact entries make equality decidable, so closure
enumeration deduplicates by plain hashing.
"""
from __future__ import annotations

import logging
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .exact_poly import MultiPoly
from .invariants import delta

log = logging.getLogger(__name__)

DEFAULT_CAP = 10_000

Matrix = tuple[tuple[Fraction, ...], ...]


class ClosureError(RuntimeError):
    """Raised when closure enumeration exceeds its cap."""


@dataclass(frozen=True)
class GroupElement:
    """Invertible exact 4x4 matrix acting on A-coordinates."""

    matrix: Matrix

    def __post_init__(self):
        m = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        if len(m) != 4 or any(len(row) != 4 for row in m):
            raise ValueError("group elements are 4x4 matrices")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(4)) for i in range(4)))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "GroupElement":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        a, b = self.matrix, other.matrix
        return GroupElement(
            tuple(tuple(sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)) for i in range(4))
        )

    def det(self) -> Fraction:
        m = [list(row) for row in self.matrix]
        det = Fraction(1)
        for c in range(4):
            pivot = next((r for r in range(c, 4) if m[r][c]), None)
            if pivot is None:
                return Fraction(0)
            if pivot != c:
                m[c], m[pivot] = m[pivot], m[c]
                det = -det
            det *= m[c][c]
            for r in range(c + 1, 4):
                f = m[r][c] / m[c][c]
                if f:
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return det

    def inverse(self) -> "GroupElement":
        m = [list(row) + [Fraction(int(i == j)) for j in range(4)] for i, row in enumerate(self.matrix)]
        for c in range(4):
            pivot = next((r for r in range(c, 4) if m[r][c]), None)
            if pivot is None:
                raise ValueError("singular matrix")
            m[c], m[pivot] = m[pivot], m[c]
            p = m[c][c]
            m[c] = [x / p for x in m[c]]
            for r in range(4):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return GroupElement(tuple(tuple(row[4:]) for row in m))

    def is_monomial(self) -> bool:
        """True for scaled permutation matrices (e.g. signed permutations)."""
        return all(sum(1 for x in row if x) == 1 for row in self.matrix)

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.matrix])

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.matrix]

    def __repr__(self) -> str:
        return "GroupElement(" + repr([[str(x) for x in row] for row in self.matrix]) + ")"


def reflection(lam: Sequence) -> GroupElement:
    """Reflection ``a -> a - 2 <lam|a> / <lam|lam> lam`` in the hyperplane orthogonal to ``lam``."""
    v = [Fraction(x) for x in lam]
    if len(v) != 4:
        raise ValueError("reflection vector must have 4 coordinates")
    norm2 = sum(x * x for x in v)
    if norm2 == 0:
        raise ValueError("cannot reflect in the zero vector")
    return GroupElement(
        tuple(tuple(Fraction(int(i == j)) - 2 * v[i] * v[j] / norm2 for j in range(4)) for i in range(4))
    )


_H = Fraction(1, 2)
_NU = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, -1))
_TAU = ((_H, _H, _H, _H), (_H, _H, -_H, -_H), (_H, -_H, _H, -_H), (_H, -_H, -_H, _H))

PRINTED_SIGMA2 = GroupElement.from_rows(
    ((_H, _H, _H, _H), (_H, _H, -_H, -_H), (_H, -_H, -_H, _H), (_H, -_H, _H, -_H))
)
"""The middle-qubit swap as typeset in the source; its last two rows are
interchanged relative to the true restriction (it has determinant +1)."""


def sigma_restriction(i: int) -> GroupElement:
    """Restriction to A of the qubit transposition ``(i, i+1)``, ``i = 1, 2, 3``.

    Qubits are numbered 1..4 from the left of the ket.  ``i = 2`` returns the
    matrix actually induced by swapping the middle qubits, which equals the
    reflection in ``(u0 - u1 - u2 - u3)/2``.
    """
    if i in (1, 3):
        return GroupElement.from_rows(_NU)
    if i == 2:
        return GroupElement.from_rows(_TAU)
    raise ValueError(f"sigma index must be 1, 2 or 3, got {i!r}")


def _unit(i: int) -> list[int]:
    return [int(k == i) for k in range(4)]


def w_generators() -> list[GroupElement]:
    """Reflections in ``u0-u1, u1-u2, u2-u3, u2+u3``."""
    roots = [(1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 1, 1)]
    return [reflection(r) for r in roots]


def nu() -> GroupElement:
    return reflection(_unit(3))


def tau() -> GroupElement:
    return reflection((_H, -_H, -_H, -_H))


def group_generators(which: str) -> list[GroupElement]:
    """Generators of ``"W"``, ``"W+nu"`` or ``"Wtilde"``."""
    gens = w_generators()
    if which == "W":
        return gens
    if which == "W+nu":
        return gens + [nu()]
    if which == "Wtilde":
        return gens + [nu(), tau()]
    raise ValueError(f"unknown group {which!r}; choose W, W+nu or Wtilde")


@dataclass(frozen=True)
class GroupSet:
    """Finite matrix group produced by :func:`generate_closure`.

    ``parents[k] = (p, g)`` records ``elements[k] == elements[p] @ generators[g]``
    for every non-identity element; the identity is ``elements[0]``.
    """

    elements: tuple[GroupElement, ...]
    generators: tuple[GroupElement, ...]
    parents: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self._index

    @property
    def _index(self) -> dict[GroupElement, int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {g: k for k, g in enumerate(self.elements)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def integer_stack(self) -> tuple[np.ndarray, int]:
        """All elements as an int64 array ``(order, 4, 4)`` scaled by a common denominator."""
        den = 1
        for g in self.elements:
            for row in g.matrix:
                for x in row:
                    den = np.lcm(den, x.denominator)
        den = int(den)
        arr = np.array([[[int(x * den) for x in row] for row in g.matrix] for g in self.elements], dtype=np.int64)
        return arr, den

    def verify_axioms(self) -> dict[str, bool]:
        """Exhaustive check of identity, inverses and closure under products."""
        arr, den = self.integer_stack()
        keys = {a.tobytes(): k for k, a in enumerate(arr)}
        eye = np.eye(4, dtype=np.int64) * den
        has_identity = eye.tobytes() in keys
        closed = True
        inverses = True
        for a in arr:
            prods = np.einsum("ij,njk->nik", a, arr)
            if np.any(prods % den):
                closed = False
                break
            prods //= den
            if not all(p.tobytes() in keys for p in prods):
                closed = False
                break
            if not any(np.array_equal(p, eye) for p in prods):
                inverses = False
        return {"identity": has_identity, "closed": closed, "inverses": inverses}

    def contains_minus_identity(self) -> bool:
        return GroupElement.from_rows([[-int(i == j) for j in range(4)] for i in range(4)]) in self


def generate_closure(gens: Sequence[GroupElement], cap: int = DEFAULT_CAP) -> GroupSet:
    """Breadth-first closure of ``gens`` under right multiplication.

    Raises :class:`ClosureError` if more than ``cap`` elements appear.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    gens = tuple(gens)
    for g in gens:
        if g.det() == 0:
            raise ValueError("generators must be invertible")
    ident = GroupElement.identity()
    elements = [ident]
    parents = [(-1, -1)]
    seen = {ident: 0}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        g = elements[k]
        for gi, s in enumerate(gens):
            h = g @ s
            if h in seen:
                continue
            if len(elements) >= cap:
                raise ClosureError(f"group not closed within cap={cap}")
            seen[h] = len(elements)
            elements.append(h)
            parents.append((k, gi))
            queue.append(len(elements) - 1)
    log.debug("closure of %d generators has order %d", len(gens), len(elements))
    group = GroupSet(tuple(elements), gens, tuple(parents))
    object.__setattr__(group, "_idx", seen)
    return group


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("QINV_THREADS", "1")))
    except ValueError:
        return 1


def images(p: MultiPoly, group: GroupSet):
    """Yield ``(element, p o element)`` for every element of ``group``.

    ``p o (A @ B) == (p o A) o B``, so each image is obtained from its BFS
    parent's image by one generator substitution; identical intermediate
    polynomials share one substitution through a cache.
    """
    cache: dict[tuple[MultiPoly, int], MultiPoly] = {}
    imgs: list[MultiPoly] = [p]
    yield group.elements[0], p
    for k in range(1, group.order):
        parent, gi = group.parents[k]
        q = imgs[parent]
        key = (q, gi)
        out = cache.get(key)
        if out is None:
            out = q.subst_linear(group.generators[gi].matrix)
            cache[key] = out
        imgs.append(out)
        yield group.elements[k], out


def is_invariant(p: MultiPoly, group: GroupSet | Sequence[GroupElement], method: str = "tree") -> bool:
    """True iff ``p(Mz) == p(z)`` exactly for every element ``M``.

    ``method="tree"`` propagates images along the closure tree (requires a
    :class:`GroupSet`); ``method="direct"`` substitutes every matrix
    independently.
    """
    if method == "tree" and isinstance(group, GroupSet):
        return all(q == p for _, q in images(p, group))
    if method not in ("tree", "direct"):
        raise ValueError(f"unknown method {method!r}")
    elements = list(group)
    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        return all(pool.map(lambda g: p.subst_linear(g.matrix) == p, elements))


def check_delta_equivariance(group: GroupSet | Sequence[GroupElement]) -> bool:
    """True iff ``delta(Mz) == det(M) delta(z)`` exactly for every element."""
    d = delta()
    return all(d.subst_linear(g.matrix) == d * g.det() for g in group)


def verification_table(group: GroupSet, polys: dict[str, MultiPoly]) -> list[dict]:
    """Per-generator record of determinant, involution and invariance of ``polys``."""
    rows = []
    ident = GroupElement.identity()
    for gi, g in enumerate(group.generators):
        rows.append({
            "generator": gi,
            "matrix": g.to_json(),
            "det": str(g.det()),
            "involution": g @ g == ident,
            "invariant": {name: p.subst_linear(g.matrix) == p for name, p in polys.items()},
        })
    return rows
