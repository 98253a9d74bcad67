"""Exact sparse polynomials in four indeterminates over the rationals.

A :class:`MultiPoly` stores integer numerators keyed by packed exponent
vectors together with one positive common denominator.  The pair is kept
reduced (gcd of all numerators and the denominator is 1), so two polynomials
are mathematically equal iff their stored forms are equal.  Integer
numerators keep products of large polynomials cheap compared to per-term
``Fraction`` arithmetic.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

NVARS = 4
_BITS = 12
_MASK = (1 << _BITS) - 1
MAX_EXPONENT = _MASK

Exponent = tuple[int, int, int, int]


def _pack(exp: Sequence[int]) -> int:
    if len(exp) != NVARS:
        raise ValueError(f"exponent vector must have {NVARS} entries, got {len(exp)}")
    key = 0
    for i, e in enumerate(exp):
        e = int(e)
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_BITS * i)
    return key


def _unpack(key: int) -> Exponent:
    return (key & _MASK, (key >> _BITS) & _MASK, (key >> 2 * _BITS) & _MASK, (key >> 3 * _BITS) & _MASK)


def _key_degree(key: int) -> int:
    return sum(_unpack(key))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact coefficient required, got {type(x).__name__}")


def _mul_int(a: Mapping[int, int], b: Mapping[int, int]) -> dict[int, int]:
    if len(a) < len(b):
        a, b = b, a
    out: dict[int, int] = {}
    get = out.get
    bitems = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bitems:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


class MultiPoly:
    """Immutable polynomial in ``z0..z3`` with exact rational coefficients.

    Build polynomials from :meth:`var` and :meth:`const` and the usual
    operators, or from an explicit ``{exponent_tuple: coefficient}`` map.

    >>> z0, z1 = MultiPoly.var(0), MultiPoly.var(1)
    >>> (z0 + z1) * (z0 - z1) == z0**2 - z1**2
    True
    """

    __slots__ = ("_num", "_den", "_hash", "_compiled")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None):
        num: dict[int, Fraction] = {}
        for exp, c in (terms or {}).items():
            k = _pack(exp)
            num[k] = num.get(k, Fraction(0)) + _as_fraction(c)
        den = 1
        for c in num.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = {k: int(c * den) for k, c in num.items() if c}
        self._set(ints, den)

    def _set(self, num: dict[int, int], den: int) -> None:
        if den <= 0:
            raise ValueError("denominator must be positive")
        g = den
        for c in num.values():
            g = math.gcd(g, c)
            if g == 1:
                break
        if not num:
            den, g = 1, 1
        if g > 1:
            num = {k: c // g for k, c in num.items()}
            den //= g
        self._num = num
        self._den = den
        self._hash = None
        self._compiled = None

    @classmethod
    def _raw(cls, num: dict[int, int], den: int = 1) -> "MultiPoly":
        p = cls.__new__(cls)
        p._set({k: c for k, c in num.items() if c}, den)
        return p

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls._raw({})

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = _as_fraction(c)
        return cls._raw({0: c.numerator}, c.denominator)

    @classmethod
    def var(cls, i: int) -> "MultiPoly":
        if not 0 <= i < NVARS:
            raise ValueError(f"variable index must be in 0..{NVARS - 1}, got {i}")
        return cls._raw({1 << (_BITS * i): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "MultiPoly":
        return cls({tuple(exp): c})

    # inspection -----------------------------------------------------------

    @property
    def denominator(self) -> int:
        """Common denominator of all coefficients."""
        return self._den

    def __len__(self) -> int:
        return len(self._num)

    def is_zero(self) -> bool:
        return not self._num

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        if not self._num:
            return -1
        return max(_key_degree(k) for k in self._num)

    def is_homogeneous(self) -> bool:
        return len({_key_degree(k) for k in self._num}) <= 1

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return Fraction(self._num.get(_pack(exp), 0), self._den)

    def terms(self) -> list[tuple[Exponent, Fraction]]:
        """Nonzero terms in descending graded-lexicographic order."""
        items = [(_unpack(k), Fraction(c, self._den)) for k, c in self._num.items()]
        items.sort(key=lambda t: (sum(t[0]), t[0]), reverse=True)
        return items

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self.terms())

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Rational)):
            return MultiPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self._den * other._den // math.gcd(self._den, other._den)
        sa, sb = d // self._den, d // other._den
        out = {k: c * sa for k, c in self._num.items()}
        for k, c in other._num.items():
            out[k] = out.get(k, 0) + c * sb
        return MultiPoly._raw(out, d)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({k: -c for k, c in self._num.items()}, self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._num) == 1 and 0 in other._num:
            c = other._num[0]
            return MultiPoly._raw({k: v * c for k, v in self._num.items()}, self._den * other._den)
        if self.degree() + other.degree() > MAX_EXPONENT:
            raise OverflowError("product degree exceeds the supported exponent range")
        return MultiPoly._raw(_mul_int(self._num, other._num), self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            c = _as_fraction(other)
            if c == 0:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (1 / c)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._den, frozenset(self._num.items())))
        return self._hash

    # calculus and substitution -------------------------------------------

    def diff(self, i: int) -> "MultiPoly":
        """Exact partial derivative with respect to ``z_i``."""
        if not 0 <= i < NVARS:
            raise ValueError(f"variable index must be in 0..{NVARS - 1}, got {i}")
        shift = _BITS * i
        unit = 1 << shift
        out = {}
        for k, c in self._num.items():
            e = (k >> shift) & _MASK
            if e:
                out[k - unit] = c * e
        return MultiPoly._raw(out, self._den)

    def subst_linear(self, matrix) -> "MultiPoly":
        """Return the polynomial ``z -> self(M z)`` for a 4x4 rational ``M``."""
        rows = _rational_matrix(matrix)
        perm = _monomial_pattern(rows)
        if perm is not None:
            return self._subst_monomial(perm)
        return self._subst_dense(rows)

    def _subst_monomial(self, perm: list[tuple[int, Fraction]]) -> "MultiPoly":
        # (Mz)_i = m_i * z_{perm_i}
        out: dict[int, int] = {}
        scales = [m for _, m in perm]
        if all(s.denominator == 1 and abs(s) == 1 for s in scales):
            for k, c in self._num.items():
                exp = _unpack(k)
                sign = 1
                new = [0] * NVARS
                for i, e in enumerate(exp):
                    new[perm[i][0]] += e
                    if e & 1 and scales[i] < 0:
                        sign = -sign
                key = _pack(new)
                out[key] = out.get(key, 0) + sign * c
            return MultiPoly._raw(out, self._den)
        terms = {}
        for k, c in self._num.items():
            exp = _unpack(k)
            new = [0] * NVARS
            coef = Fraction(c, self._den)
            for i, e in enumerate(exp):
                new[perm[i][0]] += e
                coef *= scales[i] ** e
            t = tuple(new)
            terms[t] = terms.get(t, Fraction(0)) + coef
        return MultiPoly(terms)

    def _subst_dense(self, rows: list[list[Fraction]]) -> "MultiPoly":
        if not self._num:
            return self
        # integer linear forms: M = K / m
        m = 1
        for row in rows:
            for x in row:
                m = m * x.denominator // math.gcd(m, x.denominator)
        forms = []
        for row in rows:
            forms.append({1 << (_BITS * j): int(x * m) for j, x in enumerate(row) if x})
        top = self.degree()
        # homogenise the scaling: each term of degree d gets m**(top-d)
        by_prefix: dict[tuple[int, int, int], dict[int, int]] = {}
        for k, c in self._num.items():
            e = _unpack(k)
            inner = by_prefix.setdefault(e[:3], {})
            inner[e[3]] = inner.get(e[3], 0) + c * m ** (top - sum(e))
        powers = [[{0: 1}] for _ in range(NVARS)]

        def power(i: int, n: int) -> dict[int, int]:
            table = powers[i]
            while len(table) <= n:
                table.append(_mul_int(table[-1], forms[i]))
            return table[n]

        def lincomb(pairs: Iterable[tuple[dict[int, int], int]]) -> dict[int, int]:
            out: dict[int, int] = {}
            for poly, c in pairs:
                for k, v in poly.items():
                    out[k] = out.get(k, 0) + v * c
            return out

        def add_into(acc: dict[int, int], poly: dict[int, int]) -> None:
            for k, v in poly.items():
                acc[k] = acc.get(k, 0) + v

        # nested Horner-like grouping over prefixes (e0, e1, e2)
        level2: dict[tuple[int, int], dict[int, int]] = {}
        for (e0, e1, e2), inner in by_prefix.items():
            tail = lincomb((power(3, e3), c) for e3, c in inner.items())
            prod = _mul_int(power(2, e2), tail) if e2 else tail
            add_into(level2.setdefault((e0, e1), {}), prod)
        level1: dict[int, dict[int, int]] = {}
        for (e0, e1), poly in level2.items():
            prod = _mul_int(power(1, e1), poly) if e1 else poly
            add_into(level1.setdefault(e0, {}), prod)
        total: dict[int, int] = {}
        for e0, poly in level1.items():
            prod = _mul_int(power(0, e0), poly) if e0 else poly
            add_into(total, prod)
        return MultiPoly._raw(total, self._den * m**top)

    # evaluation -----------------------------------------------------------

    def eval_exact(self, point: Sequence) -> Fraction:
        """Exact value at a rational point."""
        q = [_as_fraction(x) for x in point]
        if len(q) != NVARS:
            raise ValueError(f"point must have {NVARS} coordinates")
        total = Fraction(0)
        for k, c in self._num.items():
            e = _unpack(k)
            total += c * q[0] ** e[0] * q[1] ** e[1] * q[2] ** e[2] * q[3] ** e[3]
        return total / self._den

    def __call__(self, point) -> complex:
        return self.compile()(point)

    def compile(self) -> "NumericPoly":
        """Float evaluator for this polynomial (cached)."""
        if self._compiled is None:
            self._compiled = NumericPoly(self)
        return self._compiled

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "terms": [
                {"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.terms()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        try:
            items = data["terms"]
            terms = {}
            for t in items:
                exp = tuple(int(e) for e in t["exp"])
                terms[exp] = terms.get(exp, Fraction(0)) + Fraction(int(t["num"]), int(t["den"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed polynomial JSON: {exc}") from exc
        return cls(terms)

    def __repr__(self) -> str:
        if not self._num:
            return "MultiPoly(0)"
        parts = []
        for exp, c in self.terms()[:8]:
            mono = "*".join(f"z{i}^{e}" if e > 1 else f"z{i}" for i, e in enumerate(exp) if e)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        more = " + ..." if len(self._num) > 8 else ""
        return f"MultiPoly({' + '.join(parts)}{more})"


class NumericPoly:
    """Vectorised floating evaluation of a :class:`MultiPoly`.

    Terms are summed directly from per-variable power tables; no Horner
    scheme.  The error of a scalar evaluation is a few ulps of
    :meth:`abs_sum`, so strongly cancelling sums lose relative accuracy.  Accepts a single point of shape ``(4,)`` or a batch ``(N, 4)``.
    """

    def __init__(self, poly: MultiPoly):
        terms = poly.terms()
        self.exponents = np.array([e for e, _ in terms], dtype=np.int64).reshape(-1, NVARS)
        self.coefficients = np.array([float(c) for _, c in terms], dtype=np.float64)
        self.max_exponent = int(self.exponents.max()) if len(terms) else 0

    def __call__(self, points) -> complex | np.ndarray:
        z = np.asarray(points, dtype=np.complex128)
        single = z.ndim == 1
        z = np.atleast_2d(z)
        if z.shape[-1] != NVARS:
            raise ValueError(f"points must have {NVARS} coordinates")
        if not len(self.coefficients):
            out = np.zeros(z.shape[0], dtype=np.complex128)
            return complex(out[0]) if single else out
        powers = z[:, :, None] ** np.arange(self.max_exponent + 1)
        prod = np.ones((z.shape[0], len(self.coefficients)), dtype=np.complex128)
        for i in range(NVARS):
            prod *= powers[:, i, self.exponents[:, i]]
        terms = prod * self.coefficients
        if single:
            # compensated summation for the scalar path
            return complex(math.fsum(terms[0].real), math.fsum(terms[0].imag))
        return terms.sum(axis=1)

    def abs_sum(self, point) -> float:
        """Sum of the moduli of the individual terms at ``point`` (error scale)."""
        z = np.asarray(point, dtype=np.complex128)
        mags = np.prod(np.abs(z)[None, :] ** self.exponents, axis=1)
        return float(np.sum(np.abs(self.coefficients) * mags))


def _rational_matrix(matrix) -> list[list[Fraction]]:
    rows = [[_as_fraction(x) if not isinstance(x, float) else _exact_float(x) for x in row] for row in matrix]
    if len(rows) != NVARS or any(len(r) != NVARS for r in rows):
        raise ValueError(f"substitution matrix must be {NVARS}x{NVARS}")
    return rows


def _exact_float(x: float) -> Fraction:
    # only floats that are exact small dyadics (e.g. 0.5) are accepted
    f = Fraction(x)
    if f.denominator > 1 << 20:
        raise TypeError("substitution matrix entries must be exact rationals")
    return f


def _monomial_pattern(rows: list[list[Fraction]]) -> list[tuple[int, Fraction]] | None:
    """``[(j, m)]`` with row i equal to ``m * e_j`` if M is a scaled permutation."""
    out = []
    used = set()
    for row in rows:
        nz = [(j, x) for j, x in enumerate(row) if x]
        if len(nz) != 1 or nz[0][0] in used:
            return None
        used.add(nz[0][0])
        out.append(nz[0])
    return out


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def poly_eval(p: MultiPoly, z) -> complex:
    """Floating complex value of ``p`` at ``z``."""
    return p.compile()(z)


def poly_eval_exact(p: MultiPoly, z: Sequence) -> Fraction:
    return p.eval_exact(z)


def poly_diff(p: MultiPoly, i: int) -> MultiPoly:
    return p.diff(i)


def poly_subst_linear(p: MultiPoly, matrix) -> MultiPoly:
    """The polynomial ``z -> p(matrix @ z)``."""
    return p.subst_linear(matrix)


def variables() -> tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]:
    return tuple(MultiPoly.var(i) for i in range(NVARS))
