"""Truncated bivariate power series over a prime field.

An element of k[[x, y]] / (x, y)^N, stored sparsely as {(i, j): c} with
0 < c < p and i + j < N.  Values are immutable.
"""
from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from . import _kernel
from .errors import NotAUnit, UsageError
from .field import PrimeField

# below this many term pairs the dict convolution beats a dense round trip
_DENSE_CUTOFF = 2048


class TruncatedPoly:
    __slots__ = ("field", "N", "_c")

    def __init__(self, coeffs: Mapping[tuple[int, int], int], N: int,
                 field: PrimeField):
        if N < 1:
            raise UsageError("truncation order must be at least 1")
        p = field.p
        c = {}
        for (i, j), v in coeffs.items():
            if i < 0 or j < 0:
                raise UsageError(f"negative exponent {(i, j)}")
            if i + j < N:
                v = field(v)
                if v:
                    c[(i, j)] = v
        self.field = field
        self.N = N
        self._c = c

    @classmethod
    def _raw(cls, c: dict, N: int, field: PrimeField) -> "TruncatedPoly":
        # trusted constructor: c is already canonical
        obj = cls.__new__(cls)
        obj.field, obj.N, obj._c = field, N, c
        return obj

    @classmethod
    def zero(cls, N, field):
        return cls._raw({}, N, field)

    @classmethod
    def constant(cls, value, N, field):
        return cls({(0, 0): value}, N, field)

    @classmethod
    def one(cls, N, field):
        return cls.constant(1, N, field)

    @classmethod
    def monomial(cls, i, j, N, field, coeff=1):
        return cls({(i, j): coeff}, N, field)

    @classmethod
    def from_dense(cls, arr: np.ndarray, N: int, field: PrimeField):
        ii, jj = np.nonzero(arr[:N, :N])
        c = {(int(i), int(j)): int(arr[i, j]) % field.p
             for i, j in zip(ii, jj) if i + j < N}
        return cls._raw({k: v for k, v in c.items() if v}, N, field)

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def __getitem__(self, key) -> int:
        return self._c.get(key, 0)

    def __len__(self):
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def order(self) -> int | None:
        """Lowest total degree present, None for zero."""
        return min((i + j for i, j in self._c), default=None)

    def degree(self) -> int | None:
        return max((i + j for i, j in self._c), default=None)

    def constant_term(self) -> int:
        return self._c.get((0, 0), 0)

    def to_dense(self, N: int | None = None) -> np.ndarray:
        N = self.N if N is None else N
        out = np.zeros((N, N), dtype=np.int64)
        for (i, j), v in self._c.items():
            if i + j < N:
                out[i, j] = v
        return out

    def truncate(self, N: int) -> "TruncatedPoly":
        if N > self.N:
            raise UsageError(f"cannot raise truncation {self.N} -> {N}")
        return TruncatedPoly._raw(
            {k: v for k, v in self._c.items() if k[0] + k[1] < N}, N, self.field)

    def extend(self, N: int) -> "TruncatedPoly":
        """Reinterpret as a polynomial at a larger truncation order.

        Only meaningful when the stored terms are the whole series.
        """
        if N <= self.N:
            return self.truncate(N)
        return TruncatedPoly._raw(dict(self._c), N, self.field)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "TruncatedPoly"):
        if other.field != self.field or other.N != self.N:
            raise UsageError(
                f"mismatched operands: (p={self.field.p}, N={self.N}) vs "
                f"(p={other.field.p}, N={other.N})")

    def _lift(self, other):
        if isinstance(other, TruncatedPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return TruncatedPoly.constant(other, self.N, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        c = dict(self._c)
        for k, v in other._c.items():
            s = (c.get(k, 0) + v) % p
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return TruncatedPoly._raw(c, self.N, self.field)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return TruncatedPoly._raw({k: p - v for k, v in self._c.items()},
                                  self.N, self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: int) -> "TruncatedPoly":
        s = self.field(s)
        if s == 0:
            return TruncatedPoly.zero(self.N, self.field)
        p = self.field.p
        return TruncatedPoly._raw({k: v * s % p for k, v in self._c.items()},
                                  self.N, self.field)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        return mul_truncated(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = TruncatedPoly.one(self.N, self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = TruncatedPoly.constant(other, self.N, self.field)
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        return (self.field == other.field and self.N == other.N
                and self._c == other._c)

    def __hash__(self):
        return hash((self.field.p, self.N, frozenset(self._c.items())))

    def __repr__(self):
        return f"TruncatedPoly({format_terms(self._c, self.field)}, N={self.N})"


def format_terms(c: Mapping[tuple[int, int], int], field: PrimeField | None = None) -> str:
    if not c:
        return "0"
    parts = []
    for (i, j) in sorted(c, key=lambda k: (k[0] + k[1], -k[0])):
        v = c[(i, j)]
        if field is not None:
            v = field.signed(v)
        mono = "*".join(
            s for s in (
                "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
            ) if s)
        if not mono:
            body = str(abs(v))
        elif abs(v) == 1:
            body = mono
        else:
            body = f"{abs(v)}*{mono}"
        sign = "-" if v < 0 else "+"
        if not parts:
            parts.append(("-" if v < 0 else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def poly_from_terms(terms: Mapping[tuple[int, int], int] | Iterable, N: int,
                    field: PrimeField) -> TruncatedPoly:
    if not isinstance(terms, Mapping):
        terms = dict(terms)
    acc = {}
    for k, v in terms.items():
        acc[k] = acc.get(k, 0) + v
    return TruncatedPoly(acc, N, field)


def mul_truncated(a: TruncatedPoly, b: TruncatedPoly) -> TruncatedPoly:
    a._check(b)
    N, field = a.N, a.field
    p = field.p
    if not a._c or not b._c:
        return TruncatedPoly.zero(N, field)
    if len(a._c) * len(b._c) > _DENSE_CUTOFF:
        prod = _kernel.mul_trunc(a.to_dense(), b.to_dense(), N, p)
        return TruncatedPoly.from_dense(prod, N, field)
    c: dict = {}
    for (i1, j1), v1 in a._c.items():
        room = N - i1 - j1
        for (i2, j2), v2 in b._c.items():
            if i2 + j2 < room:
                k = (i1 + i2, j1 + j2)
                c[k] = (c.get(k, 0) + v1 * v2) % p
    return TruncatedPoly._raw({k: v for k, v in c.items() if v}, N, field)


def partial_derivative(a: TruncatedPoly, var: str) -> TruncatedPoly:
    """Formal partial.  The result keeps order N although its top degree is
    only known if a was known one degree further."""
    p = a.field.p
    c = {}
    for (i, j), v in a._c.items():
        if var == "x" and i:
            w = v * i % p
            if w:
                c[(i - 1, j)] = w
        elif var == "y" and j:
            w = v * j % p
            if w:
                c[(i, j - 1)] = w
        elif var not in ("x", "y"):
            raise UsageError(f"unknown variable {var!r}")
    return TruncatedPoly._raw(c, a.N, a.field)


def invert_unit(u: TruncatedPoly) -> TruncatedPoly:
    """Newton iteration v <- v(2 - uv); each step doubles the valid order."""
    c0 = u.constant_term()
    if c0 == 0:
        raise NotAUnit("constant term is zero")
    v = TruncatedPoly.constant(u.field.inv(c0), u.N, u.field)
    prec = 1
    while prec < u.N:
        v = v * (2 - u * v)
        prec *= 2
    return v
