"""Local presentation of the principal-parts module SP^m(f) of a plane germ.

Generators are the monomials a^i b^j with i + j <= m - 1 (a, b the fibre
coordinates).  Elements of the dual module are recorded by their values on
these generators; degeneracy matrices evaluate such functionals on random
jet elements.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, factorial
from typing import Mapping, Sequence

import numpy as np

from . import _kernel
from .errors import NotAGerm, Unsupported, UsageError
from .field import PrimeField
from .poly import TruncatedPoly, partial_derivative, poly_from_terms

EXPLICIT_SMALL = "explicit-small"
NODE = "node"
ZERO_SPECIALIZED = "zero-specialized"

AB_CONSTANT = "ab-constant"
UV_COEFFS = "uv-coeffs"


def triangle(m: int) -> list[tuple[int, int]]:
    """Exponents (i, j) with i + j <= m - 1, by degree then i descending."""
    return [(d - j, j) for d in range(m) for j in range(d + 1)]


@dataclass(frozen=True)
class GermSpec:
    terms: tuple  # ((i, j), coeff) pairs, sorted, nonzero integer coeffs
    source_text: str = dc_field(default="", compare=False)

    def __post_init__(self):
        if not self.terms:
            raise NotAGerm("the zero polynomial is not a germ")
        for (i, j), c in self.terms:
            if (i, j) == (0, 0):
                raise NotAGerm(f"nonzero constant term {c}")

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], int], source_text: str = ""):
        acc: dict = {}
        for k, v in terms.items():
            acc[tuple(k)] = acc.get(tuple(k), 0) + int(v)
        items = tuple(sorted((k, v) for k, v in acc.items() if v))
        return cls(items, source_text)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def degree(self) -> int:
        return max(i + j for (i, j), _ in self.terms)

    def to_poly(self, field: PrimeField, N: int) -> TruncatedPoly:
        return poly_from_terms(self.as_dict(), N, field)

    def __str__(self):
        from .parser import format_germ
        return format_germ(self)


def series_of(f, field: PrimeField, N: int) -> TruncatedPoly:
    """f as a TruncatedPoly known to order N."""
    if isinstance(f, GermSpec):
        return f.to_poly(field, N)
    if isinstance(f, TruncatedPoly):
        if f.field != field:
            raise UsageError("series lives over a different field")
        if f.N < N:
            raise UsageError(f"series known to order {f.N}, need {N}")
        return f.truncate(N)
    raise UsageError(f"expected a germ or series, got {type(f).__name__}")


class Partials:
    """Cached partial derivatives of f, each exact modulo (x, y)^N.

    The underlying series is taken to order N + max_order so that
    differentiating max_order times loses nothing below degree N.
    """

    def __init__(self, f, field: PrimeField, N: int, max_order: int):
        self.field, self.N, self.max_order = field, N, max_order
        self._base = series_of(f, field, N + max_order)
        self._cache: dict = {(0, 0): self._base}

    def _raw(self, s: int, t: int) -> TruncatedPoly:
        if (s, t) not in self._cache:
            if s > 0:
                self._cache[(s, t)] = partial_derivative(self._raw(s - 1, t), "x")
            else:
                self._cache[(s, t)] = partial_derivative(self._raw(s, t - 1), "y")
        return self._cache[(s, t)]

    def __call__(self, s: int, t: int) -> TruncatedPoly:
        if s + t > self.max_order:
            raise UsageError(f"partial of order {s + t} beyond {self.max_order}")
        return self._raw(s, t).truncate(self.N)

    @property
    def fx(self):
        return self(1, 0)

    @property
    def fy(self):
        return self(0, 1)

    def value(self) -> TruncatedPoly:
        return self(0, 0)


# -- relations ---------------------------------------------------------------

@dataclass(frozen=True)
class RelationSet:
    order: int
    relations: dict  # (i, j) -> list of ((s, t), TruncatedPoly)


def taylor_relations(f, m: int, field: PrimeField, N: int) -> RelationSet:
    if m < 2:
        raise UsageError("relations need order m >= 2")
    field.require_order(m)
    P = Partials(f, field, N, m - 1)
    rels = {}
    for i, j in triangle(m - 1):
        terms = []
        for d in range(1, m - (i + j)):
            for s in range(d + 1):
                w = field(Fraction(1, factorial(s) * factorial(d - s)))
                c = P(s, d - s).scale(w)
                if not c.is_zero():
                    terms.append(((s + i, d - s + j), c))
        rels[(i, j)] = terms
    return RelationSet(m, rels)


# -- dual bases --------------------------------------------------------------

@dataclass(frozen=True)
class DualBasis:
    order: int
    functionals: tuple  # m dicts: generator key -> TruncatedPoly (zero omitted)
    flavor: str

    def __len__(self):
        return len(self.functionals)


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if not v.is_zero()}


def dual_basis_small(f, m: int, field: PrimeField, N: int) -> DualBasis:
    """The explicit functionals for orders m <= 4.

    Lower functionals extend by zero on higher generators, so the first m of
    the four serve at every order m.
    """
    if m < 1:
        raise UsageError("order must be positive")
    if m > 4:
        raise Unsupported(f"explicit dual basis only for m <= 4, got {m}")
    field.require_order(m)
    P = Partials(f, field, N, max(m - 1, 1))
    one = TruncatedPoly.one(N, field)
    half = field(Fraction(1, 2))
    third = field(Fraction(1, 3))
    out = [{(0, 0): one}]
    if m >= 2:
        fx, fy = P.fx, P.fy
        out.append({(1, 0): fy, (0, 1): -fx})
    if m >= 3:
        fxx, fxy, fyy = P(2, 0), P(1, 1), P(0, 2)
        out.append({
            (1, 0): fxy * fy - (fyy * fx).scale(half),
            (0, 1): -(fxx * fy).scale(half),
            (2, 0): fy * fy,
            (1, 1): -(fy * fx),
            (0, 2): fx * fx,
        })
    if m >= 4:
        fxxx, fxxy, fxyy, fyyy = P(3, 0), P(2, 1), P(1, 2), P(0, 3)
        fx2, fy2 = fx * fx, fy * fy
        a_val = (fxy * fxy * fy
                 + (fxxy * fy2 - fxyy * fx * fy - fxy * fyy * fx
                    + (fyyy * fx2).scale(third)).scale(half))
        b_val = -(fxx * fxy * fy + (fxxx * fy2).scale(third)).scale(half)
        out.append({
            (1, 0): a_val,
            (0, 1): b_val,
            (2, 0): (fxy * fy2).scale(2) - fyy * fx * fy,
            (1, 1): -(fxy * fx * fy) + (fyy * fx2 - fxx * fy2).scale(half),
            (0, 2): fxx * fx * fy,
            (3, 0): fy2 * fy,
            (2, 1): -(fy2 * fx),
            (1, 2): fy * fx2,
            (0, 3): -(fx2 * fx),
        })
    return DualBasis(m, tuple(_clean(d) for d in out), EXPLICIT_SMALL)


def node_value(m: int, i: int, ell: int) -> Fraction:
    """Coefficient of y^ell in e_i(v^ell) for the node basis of order m."""
    return (Fraction((-1) ** i * ell * (m - i), m * (ell + i))
            * comb(m, i) * comb(m + ell - 1, ell))


def dual_basis_node(m: int, field: PrimeField, N: int) -> DualBasis:
    """Basis e_0..e_{m-1} for the node xy in the (u, v) = (x + a, y + b)
    coordinates.  Keys are reduced generators: (j, 0) for u^j, (0, l) for
    v^l, (0, 0) for 1.
    """
    if m < 1:
        raise UsageError("order must be positive")
    field.require_order(m)
    funcs = []
    for i in range(m):
        d = {}
        if i == 0:
            d[(0, 0)] = TruncatedPoly.one(N, field)
        for j in range(1, m):
            if j == i:
                d[(j, 0)] = TruncatedPoly.monomial(j, 0, N, field)
        for ell in range(1, m + 1):
            d[(0, ell)] = TruncatedPoly.monomial(0, ell, N, field, field(node_value(m, i, ell)))
        d[(m, 0)] = TruncatedPoly.monomial(
            m, 0, N, field, comb(m, i) * (-1) ** (m - i + 1))
        funcs.append(_clean(d))
    return DualBasis(m, tuple(funcs), NODE)


def dual_basis_specialized_zero(f, m: int, field: PrimeField, N: int) -> DualBasis:
    if m < 1:
        raise UsageError("order must be positive")
    P = Partials(f, field, N, 1)
    fx, fy = P.fx, P.fy
    funcs = []
    for ell in range(1, m + 1):
        d = {}
        for j in range(ell):
            i = ell - 1 - j
            d[(i, j)] = (fy ** i * fx ** j).scale((-1) ** j)
        funcs.append(_clean(d))
    return DualBasis(m, tuple(funcs), ZERO_SPECIALIZED)


# -- jet elements ------------------------------------------------------------

@dataclass(frozen=True)
class JetElement:
    order: int
    mode: str
    coefficients: dict  # (i, j) -> int residue

    def __post_init__(self):
        if self.mode not in (AB_CONSTANT, UV_COEFFS):
            raise UsageError(f"unknown element mode {self.mode!r}")
        for i, j in self.coefficients:
            if i < 0 or j < 0 or i + j > self.order - 1:
                raise UsageError(f"index {(i, j)} outside the order-{self.order} triangle")


def random_jet_elements(m: int, n: int, constraints: str = "none", seed=0,
                        field: PrimeField = PrimeField()) -> list[JetElement]:
    """n elements with uniform random coefficients, deterministic in seed.

    With constraints="flecnode" the first element is a (u, v) element whose
    pure u-power coefficients c_{i0}, i <= m - 2, vanish: along the branch
    y = 0 it only keeps its top-order term.  (Killing c_{m-1,0} as well
    would make the whole first column divisible by y.)
    """
    if n < 1:
        raise UsageError("need at least one element")
    if constraints not in ("none", "flecnode"):
        raise UsageError(f"unknown constraint {constraints!r}")
    rng = np.random.default_rng(seed)
    idx = triangle(m)
    out = []
    for ell in range(n):
        vals = [int(v) for v in rng.integers(0, field.p, size=len(idx))]
        coeffs = dict(zip(idx, vals))
        if constraints == "flecnode" and ell == 0:
            for i in range(m - 1):
                coeffs[(i, 0)] = 0
            out.append(JetElement(m, UV_COEFFS, coeffs))
        else:
            out.append(JetElement(m, AB_CONSTANT, coeffs))
    return out


def uv_to_ab(elem: JetElement, field: PrimeField, N: int) -> dict:
    """Rewrite sum c_ij u^i v^j with u = x + a, v = y + b in the a, b
    monomials; returns (i, j) -> TruncatedPoly."""
    if elem.mode != UV_COEFFS:
        raise UsageError("uv_to_ab needs a uv-coeffs element")
    acc: dict = {}
    for (i1, j1), c in elem.coefficients.items():
        if not c:
            continue
        for i in range(i1 + 1):
            for j in range(j1 + 1):
                w = comb(i1, i) * comb(j1, j) * c
                key = (i, j)
                acc.setdefault(key, {})
                mono = (i1 - i, j1 - j)
                acc[key][mono] = acc[key].get(mono, 0) + w
    return {k: poly_from_terms(v, N, field) for k, v in acc.items()}


def _ab_coefficients(elem: JetElement, field: PrimeField, N: int) -> dict:
    if elem.mode == AB_CONSTANT:
        return {k: TruncatedPoly.constant(v, N, field)
                for k, v in elem.coefficients.items() if field(v)}
    return uv_to_ab(elem, field, N)


def _uv_coefficients(elem: JetElement, field: PrimeField, N: int) -> dict:
    """(i, j) -> TruncatedPoly coefficient of u^i v^j."""
    if elem.mode == UV_COEFFS:
        return {k: TruncatedPoly.constant(v, N, field)
                for k, v in elem.coefficients.items() if field(v)}
    # a = u - x, b = v - y
    acc: dict = {}
    for (i1, j1), c in elem.coefficients.items():
        if not c:
            continue
        for i in range(i1 + 1):
            for j in range(j1 + 1):
                w = comb(i1, i) * comb(j1, j) * c * (-1) ** (i1 - i + j1 - j)
                acc.setdefault((i, j), {})
                mono = (i1 - i, j1 - j)
                acc[(i, j)][mono] = acc[(i, j)].get(mono, 0) + w
    return {k: poly_from_terms(v, N, field) for k, v in acc.items()}


def node_reduce(uv: Mapping[tuple[int, int], TruncatedPoly], field: PrimeField,
                N: int) -> dict:
    """Apply uv = xy: u^i v^j -> (xy)^k u^(i-k) or v^(j-k), k = min(i, j)."""
    out: dict = {}
    for (i, j), c in uv.items():
        k = min(i, j)
        key = (i - k, j - k)
        term = c * TruncatedPoly.monomial(k, k, N, field) if k else c
        out[key] = out[key] + term if key in out else term
    return out


def apply_functional(func: Mapping, coeffs: Mapping, field: PrimeField,
                     N: int) -> TruncatedPoly:
    total = TruncatedPoly.zero(N, field)
    for key, c in coeffs.items():
        val = func.get(key)
        if val is not None and not c.is_zero():
            total = total + c * val
    return total


def _element_coefficients(basis: DualBasis, elem: JetElement, field, N) -> dict:
    if basis.flavor == NODE:
        return node_reduce(_uv_coefficients(elem, field, N), field, N)
    return _ab_coefficients(elem, field, N)


def degeneracy_matrix(basis: DualBasis, elems: Sequence[JetElement],
                      field: PrimeField, N: int) -> list[list[TruncatedPoly]]:
    """Entry (i, l) is functional i applied to element l."""
    for e in elems:
        if e.order != basis.order:
            raise UsageError(f"element order {e.order} != basis order {basis.order}")
        if basis.flavor == NODE and e.mode not in (UV_COEFFS, AB_CONSTANT):
            raise UsageError("node basis needs uv or ab elements")
    cols = [_element_coefficients(basis, e, field, N) for e in elems]
    return [[apply_functional(func, c, field, N) for c in cols]
            for func in basis.functionals]


def maximal_minors(M: Sequence[Sequence[TruncatedPoly]]) -> list[TruncatedPoly]:
    """All maximal minors of an r x c matrix with |r - c| <= 1.

    Minors are listed by the index of the deleted row or column and carry no
    alternating sign.  Determinants are expanded row by row over column
    subsets, so every k x k minor of the first k rows is shared.
    """
    r = len(M)
    c = len(M[0]) if r else 0
    if r == 0 or c == 0 or any(len(row) != c for row in M):
        raise UsageError("matrix must be nonempty and rectangular")
    if abs(r - c) > 1:
        raise UsageError(f"{r}x{c} matrix has no maximal-minor ideal of this shape")
    if r > c:
        M = [[M[i][j] for i in range(r)] for j in range(c)]
        r, c = c, r
    field, N = M[0][0].field, M[0][0].N
    p = field.p
    dense = [[e.to_dense() if not e.is_zero() else None for e in row] for row in M]
    one = np.zeros((N, N), dtype=np.int64)
    one[0, 0] = 1
    layer = {0: one}
    for i in range(r):
        nxt: dict = {}
        for S, val in layer.items():
            for j in range(c):
                if S >> j & 1 or dense[i][j] is None:
                    continue
                prod = _kernel.mul_trunc(dense[i][j], val, N, p)
                if bin(S >> (j + 1)).count("1") % 2:
                    prod = (p - prod) % p
                T = S | (1 << j)
                nxt[T] = (nxt[T] + prod) % p if T in nxt else prod
        layer = nxt
    full = (1 << c) - 1
    if r == c:
        keys = [full]
    else:
        keys = [full & ~(1 << j) for j in range(c)]
    return [TruncatedPoly.from_dense(layer[k], N, field) if k in layer
            else TruncatedPoly.zero(N, field) for k in keys]
