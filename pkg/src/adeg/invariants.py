"""Randomized degeneracy invariants of plane germs and their companions
(Milnor number, Hilbert-Samuel multiplicity, delta, bounds)."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, gcd
from typing import Callable, Optional

import numpy as np

from . import closed_forms
from .colength import DEFAULT_MAX_N, ColengthReport, ideal_colength
from .errors import (ColengthDiverged, DegenerateDraws, InternalInconsistency,
                     NotIsolated, Unavailable, UnitDependence, Unsupported,
                     UsageError)
from .field import PrimeField
from .jets import (AB_CONSTANT, UV_COEFFS, GermSpec, Partials, degeneracy_matrix,
                   dual_basis_node, dual_basis_small, dual_basis_specialized_zero,
                   maximal_minors, random_jet_elements)
from .poly import TruncatedPoly, invert_unit

W1, W2A, W2B = "w1", "w2a", "w2b"
KINDS = (W1, W2A, W2B)
NODE_GERM = GermSpec.from_terms({(1, 1): 1}, "x*y")

Series = Callable[[int], TruncatedPoly]


def check_kind(kind: str) -> str:
    k = str(kind).lower()
    if k not in KINDS:
        raise UsageError(f"unknown kind {kind!r}, expected one of {KINDS}")
    return k


def element_count(m: int, kind: str) -> int:
    return {W1: m, W2A: m - 1, W2B: m + 1}[check_kind(kind)]


def default_start(m: int) -> int:
    return max(2 * m, 8)


@dataclass(frozen=True)
class DegeneracyResult:
    germ: GermSpec
    m: int
    kind: str
    trials: tuple  # ColengthReport, or None for a diverged draw
    value: int
    agreement: int
    unit_checked: bool = False
    unit_values: tuple = ()

    @property
    def truncation(self) -> int:
        return max(r.truncation_used for r in self.trials if r is not None)

    @property
    def stable(self) -> bool:
        return any(r is not None and r.stable for r in self.trials)


def _seed(*parts) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(x) for x in parts])


def _germ_series(f: GermSpec, field: PrimeField) -> Series:
    return lambda prec: f.to_poly(field, prec)


def _summarize(f, m, kind, reports) -> DegeneracyResult:
    ok = [r.value for r in reports if r is not None]
    if not ok:
        raise DegenerateDraws(f"all {len(reports)} trials diverged for m={m}, {kind}")
    v = min(ok)
    return DegeneracyResult(f, m, kind, tuple(reports), v, ok.count(v))


def _run(f, m, kind, trials, build, start_N, max_N) -> DegeneracyResult:
    """build(t, N) returns the generators of trial t at truncation N."""
    reports = []
    for t in range(trials):
        try:
            reports.append(ideal_colength(lambda N: build(t, N), start_N, max_N))
        except ColengthDiverged:
            reports.append(None)
    return _summarize(f, m, kind, reports)


def _degeneracy_core(f, series: Series, m, kind, trials, field, seed_parts,
                     start_N, max_N, basis_of, elements_of) -> DegeneracyResult:
    kind = check_kind(kind)
    n = element_count(m, kind)
    if n < 1:
        raise Unsupported(f"kind {kind} needs m >= 2")
    field.require_order(m)
    start_N = default_start(m) if start_N is None else start_N
    draws = [elements_of(m, n, _seed(*seed_parts, t)) for t in range(trials)]

    def build(t, N):
        basis = basis_of(series, N)
        mat = degeneracy_matrix(basis, draws[t], field, N)
        gens = maximal_minors(mat)
        if kind == W1:
            gens.append(series(N))
        return gens

    return _run(f, m, kind, trials, build, start_N, max_N)


def _small_basis(field, m):
    return lambda series, N: dual_basis_small(series(N + m), m, field, N)


def _is_node(f: GermSpec) -> bool:
    return f == NODE_GERM


def sd_value(f: GermSpec, m: int, kind: str, trials: int = 5,
             field: PrimeField = PrimeField(), seed: int = 0,
             start_N: Optional[int] = None, max_N: int = DEFAULT_MAX_N,
             _series: Optional[Series] = None) -> DegeneracyResult:
    """Minimal colength of the degeneracy ideal over random constant jets."""
    if m < 1:
        raise UsageError("order must be positive")
    if m > 4:
        if _is_node(f) and _series is None:
            return node_ad(m, kind, trials, field, seed, start_N, max_N)
        raise Unsupported(f"order {m} > 4 is only available for the node x*y")
    series = _series or _germ_series(f, field)
    elements = lambda m_, n_, s: random_jet_elements(m_, n_, "none", s, field)  # noqa: E731
    return _degeneracy_core(f, series, m, kind, trials, field, (seed, 0),
                            start_N, max_N, _small_basis(field, m), elements)


def random_unit(field: PrimeField, seed) -> dict:
    """Random nonzero constant plus a random tail of degree <= 2."""
    rng = np.random.default_rng(seed)
    c0 = int(rng.integers(1, field.p))
    tail = [int(v) for v in rng.integers(0, field.p, size=5)]
    keys = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    return {(0, 0): c0, **dict(zip(keys, tail))}


def unit_multiple(f: GermSpec, unit: dict, field: PrimeField) -> Series:
    """prec -> u^{-1} * f as a series known to order prec."""
    def series(prec):
        u = TruncatedPoly(unit, prec, field)
        return invert_unit(u) * f.to_poly(field, prec)
    return series


def ad_value(f: GermSpec, m: int, kind: str, trials: int = 5, units: int = 2,
             field: PrimeField = PrimeField(), seed: int = 0,
             start_N: Optional[int] = None, max_N: int = DEFAULT_MAX_N) -> DegeneracyResult:
    """SD of u*f for several random units u, which must all agree."""
    kind = check_kind(kind)
    if units < 1:
        raise UsageError("need at least one unit")
    if m > 4 and _is_node(f):
        # the node basis is tied to x*y itself; see node_ad
        return node_ad(m, kind, trials, field, seed, start_N, max_N)
    results = []
    for k in range(units):
        unit = random_unit(field, _seed(seed, 1, k))
        series = unit_multiple(f, unit, field)
        elements = lambda m_, n_, s: random_jet_elements(m_, n_, "none", s, field)  # noqa: E731
        if m > 4:
            raise Unsupported(f"order {m} > 4 is only available for the node x*y")
        results.append(_degeneracy_core(
            f, series, m, kind, trials, field, (seed, 2, k), start_N, max_N,
            _small_basis(field, m), elements))
    values = tuple(r.value for r in results)
    if len(set(values)) != 1:
        raise UnitDependence(f"unit multiples disagree: {values}")
    reports = tuple(rep for r in results for rep in r.trials)
    return DegeneracyResult(f, m, kind, reports, values[0],
                            min(r.agreement for r in results), True, values)


def _node_elements(field, mode, constraints="none"):
    def make(m, n, s):
        els = random_jet_elements(m, n, constraints, s, field)
        if mode == UV_COEFFS:
            from .jets import JetElement
            els = [e if e.mode == UV_COEFFS else JetElement(m, UV_COEFFS, e.coefficients)
                   for e in els]
        return els
    return make


def _node_basis(field, m):
    return lambda series, N: dual_basis_node(m, field, N)


def node_ad(m: int, kind: str, trials: int = 5, field: PrimeField = PrimeField(),
            seed: int = 0, start_N: Optional[int] = None,
            max_N: int = DEFAULT_MAX_N, mode: str = UV_COEFFS) -> DegeneracyResult:
    """Degeneracy of the node x*y at any order, through its (u, v) basis."""
    series = _germ_series(NODE_GERM, field)
    return _degeneracy_core(NODE_GERM, series, m, kind, trials, field, (seed, 3),
                            start_N, max_N, _node_basis(field, m),
                            _node_elements(field, mode))


def flecnode_colength(m: int, trials: int = 5, field: PrimeField = PrimeField(),
                      seed: int = 0, start_N: Optional[int] = None,
                      max_N: int = DEFAULT_MAX_N) -> DegeneracyResult:
    """Node W2A colength when the first element is flexed along a branch."""
    if m < 3:
        raise UsageError("the flecnode count needs m >= 3")
    series = _germ_series(NODE_GERM, field)
    return _degeneracy_core(NODE_GERM, series, m, W2A, trials, field, (seed, 4),
                            start_N, max_N, _node_basis(field, m),
                            _node_elements(field, UV_COEFFS, "flecnode"))


def zero_specialized_length(f: GermSpec, m: int, kind: str, trials: int = 5,
                            field: PrimeField = PrimeField(), seed: int = 0,
                            start_N: Optional[int] = None,
                            max_N: int = DEFAULT_MAX_N) -> DegeneracyResult:
    if m < 2:
        raise UsageError("zero-specialized lengths need m >= 2")
    series = _germ_series(f, field)
    basis = lambda s, N: dual_basis_specialized_zero(s(N + 1), m, field, N)  # noqa: E731
    elements = lambda m_, n_, s: random_jet_elements(m_, n_, "none", s, field)  # noqa: E731
    return _degeneracy_core(f, series, m, kind, trials, field, (seed, 5),
                            start_N, max_N, basis, elements)


# -- classical invariants ----------------------------------------------------

def milnor_number(f: GermSpec, field: PrimeField = PrimeField(),
                  start_N: int = 8, max_N: int = DEFAULT_MAX_N) -> int:
    def gens(N):
        P = Partials(f, field, N, 1)
        return [P.fx, P.fy]
    try:
        return ideal_colength(gens, start_N, max_N).value
    except ColengthDiverged as exc:
        raise NotIsolated(f"{f} has no finite Milnor number: {exc}") from None


def polar_colength(f: GermSpec, field: PrimeField = PrimeField(), seed: int = 0,
                   start_N: int = 8, max_N: int = DEFAULT_MAX_N) -> int:
    """dim R/(f, alpha f_x - beta f_y) for random nonzero alpha, beta."""
    rng = np.random.default_rng(_seed(seed, 6))
    alpha, beta = (int(v) for v in rng.integers(1, field.p, size=2))

    def gens(N):
        P = Partials(f, field, N, 1)
        return [P.value(), P.fx.scale(alpha) - P.fy.scale(beta)]
    return ideal_colength(gens, start_N, max_N).value


def hilbert_samuel(f: GermSpec, field: PrimeField = PrimeField(), seed: int = 0,
                   trials: int = 5, units: int = 2, cross_check: bool = True) -> int:
    e = polar_colength(f, field, seed)
    if cross_check:
        ad = ad_value(f, 2, W1, trials, units, field, seed).value
        if ad != e:
            raise InternalInconsistency(f"polar colength {e} != AD^2_(1) = {ad}")
    return e


def binomial_exponents(f: GermSpec) -> Optional[tuple[int, int]]:
    """(s, t) with s >= t >= 2 when f = +-(y^t - x^s) up to swapping x, y."""
    d = f.as_dict()
    if len(d) != 2:
        return None
    (k1, c1), (k2, c2) = sorted(d.items())
    if c1 + c2 != 0 or abs(c1) != 1:
        return None
    pure = [k for k in (k1, k2) if k[0] == 0 or k[1] == 0]
    if len(pure) != 2 or k1[0] == k2[0]:
        return None
    a = max(k1[0], k2[0])
    b = max(k1[1], k2[1])
    if min(a, b) < 2:
        return None
    return max(a, b), min(a, b)


def delta_binomial(s: int, t: int) -> int:
    if not (s >= t >= 2):
        raise UsageError("need s >= t >= 2")
    return ((s - 1) * (t - 1) + gcd(s, t) - 1) // 2


def branch_count(f: GermSpec) -> int:
    if _is_node(f):
        return 2
    st = binomial_exponents(f)
    if st is None:
        raise Unavailable(f"branch count of {f} needs Puiseux expansion")
    return gcd(*st)


def delta_invariant(f: GermSpec) -> int:
    if _is_node(f):
        return 1
    st = binomial_exponents(f)
    if st is None:
        raise Unavailable(f"delta of {f} is only available for x*y and y^t - x^s")
    return delta_binomial(*st)


@dataclass(frozen=True)
class InvariantReport:
    milnor: int
    hilbert_samuel: int
    discriminant_mult: int
    delta: Optional[int] = None
    branches: Optional[int] = None


def invariant_report(f: GermSpec, field: PrimeField = PrimeField(), seed: int = 0) -> InvariantReport:
    mu = milnor_number(f, field)
    e = polar_colength(f, field, seed)
    try:
        d, r = delta_invariant(f), branch_count(f)
        if 2 * d != mu + r - 1:
            raise InternalInconsistency(f"Milnor-Jung fails: 2*{d} != {mu}+{r}-1")
    except Unavailable:
        d = r = None
    # planar germs: the discriminant multiplicity is the Milnor number
    return InvariantReport(mu, e, mu, d, r)


def limiting_count(f: GermSpec, m: int, kind: str, trials: int = 5, units: int = 2,
                   field: PrimeField = PrimeField(), seed: int = 0) -> int:
    """Inflection points of a general nearby fibre that tend to the singular
    point."""
    kind = check_kind(kind)
    ad = ad_value(f, m, kind, trials, units, field, seed).value
    if kind == W1:
        return ad
    mu = milnor_number(f, field)
    cnt = ad - mu * (comb(m + 1, 4) if kind == W2A else comb(m + 2, 4))
    if cnt < 0:
        raise InternalInconsistency(f"negative limiting count {cnt}")
    return cnt


@dataclass(frozen=True)
class BoundsCheck:
    computed: int
    lower: int
    upper: Optional[Fraction]
    ok: bool


def bounds_report(f: GermSpec, m: int, kind: str, computed: int,
                  field: PrimeField = PrimeField(), strict: bool = True) -> BoundsCheck:
    kind = check_kind(kind)
    mu = milnor_number(f, field)
    delta = None
    if kind == W1:
        delta = delta_invariant(f)
    lo, hi = closed_forms.ad_bounds(mu, delta, m, kind)
    ok = lo <= computed and (hi is None or computed <= hi)
    if strict and not ok:
        raise InternalInconsistency(f"{computed} outside [{lo}, {hi}]")
    return BoundsCheck(computed, lo, hi, ok)
