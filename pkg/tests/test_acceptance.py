"""Acceptance suite: ten criteria, one PASS/FAIL line each.

Run with pytest (the lines are printed even without -s) or directly with
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import io
import json
import random
import sys
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import oracles  # noqa: E402
from adeg import closed_forms as cf  # noqa: E402
from adeg import invariants as inv  # noqa: E402
from adeg.cli import RunConfig, execute, verify_table1  # noqa: E402
from adeg.colength import ideal_colength, truncated_colength  # noqa: E402
from adeg.corpus import COLUMNS, GERMS, TABLE1, corpus  # noqa: E402
from adeg.errors import AdegError, Unavailable  # noqa: E402
from adeg.field import PrimeField  # noqa: E402
from adeg.jets import (GermSpec, apply_functional, dual_basis_node,  # noqa: E402
                       dual_basis_small, node_reduce, taylor_relations)
from adeg.parser import format_germ, parse_germ  # noqa: E402
from adeg.poly import TruncatedPoly, poly_from_terms  # noqa: E402

P = 7919
F = PrimeField(P)
T = 5
SEED = 1


@lru_cache(maxsize=None)
def ad(text: str, m: int, kind: str) -> int:
    return inv.ad_value(parse_germ(text), m, kind, trials=T, units=2, field=F, seed=SEED).value


class Outcome:
    def __init__(self):
        self.checks = 0
        self.failures: list[str] = []

    def expect(self, ok: bool, what: str):
        self.checks += 1
        if not ok:
            self.failures.append(what)

    def equal(self, got, want, what: str):
        self.expect(got == want, f"{what}: got {got}, expected {want}")

    @property
    def ok(self) -> bool:
        return not self.failures and self.checks > 0

    def line(self, k: int, title: str) -> str:
        head = f"{'PASS' if self.ok else 'FAIL'} criterion {k:2d} {title}: "
        head += f"{self.checks - len(self.failures)}/{self.checks} checks"
        if self.failures:
            head += "; " + "; ".join(self.failures[:5])
        return head


# -- the criteria ------------------------------------------------------------------

def c1_table1(o: Outcome):
    summary = verify_table1(RunConfig(P, T, 2, SEED, None, 64, "text"))
    bad = {r["check"] for r in summary["mismatches"]}
    cells = [f"{label} m={m} {kind}" for label in TABLE1 for m, kind in COLUMNS]
    mus = [f"{label} mu" for label in TABLE1]
    assert len(cells) == 66 and len(mus) == 11
    for name in cells + mus:
        o.expect(name not in bad, f"{name} mismatched")
    for r in summary["mismatches"]:
        if r["check"] not in cells + mus:
            o.expect(False, f"{r['check']}: got {r['got']}, expected {r['expected']}")


def c2_node(o: Outcome):
    for m in range(2, 9):
        want = {"w1": m * (m - 1), "w2a": comb(m + 1, 4), "w2b": comb(m + 2, 4)}
        for kind, v in want.items():
            o.equal(inv.node_ad(m, kind, T, F, SEED).value, v, f"node m={m} {kind}")


def c3_cusp(o: Outcome):
    for m in (3, 4):
        o.equal(ad("y^2 - x^3", m, "w2a"), 2 * comb(m + 1, 4), f"cusp m={m}")
        o.equal(inv.limiting_count(parse_germ("y^2 - x^3"), m, "w2a", T, 2, F, SEED), 0,
                f"cusp limit m={m}")


def c4_families(o: Outcome):
    for t in range(2, 7):
        for s in range(t, 7):
            f = f"y^{t} - x^{s}"
            o.equal(ad(f, 3, "w2a"), (2 * t - 3) * (s - 1), f"{f} m=3 w2a")
            o.equal(ad(f, 2, "w1"), s * (t - 1), f"{f} m=2 w1")
    for s in range(2, 9):
        f = f"y^2 - x^{s}"
        o.equal(ad(f, 4, "w2a"), {2: 5, 3: 10}.get(s, 6 * (s - 1)), f"{f} m=4 w2a")
        o.equal(ad(f, 3, "w1"), {2: 6, 3: 8}.get(s, 3 * s), f"{f} m=3 w1")


def c5_identities(o: Outcome):
    for label, f in corpus():
        text = GERMS[label]
        o.equal(ad(text, 2, "w2b"), inv.milnor_number(f, F), f"{label} AD2(1,1) vs mu")
        o.equal(ad(text, 2, "w1"), inv.polar_colength(f, F, SEED), f"{label} AD2(1) vs e_f")
        o.equal(ad(text, 1, "w1"), 0, f"{label} AD1(1)")
        o.equal(ad(text, 1, "w2b"), 0, f"{label} AD1(1,1)")
        o.equal(ad(text, 2, "w2a"), 0, f"{label} AD2(2)")


def c6_flecnode(o: Outcome):
    for m in range(3, 7):
        o.equal(inv.flecnode_colength(m, T, F, SEED).value, comb(m + 1, 4) + 1, f"flecnode m={m}")


def c7_zero_spec(o: Outcome):
    node = inv.NODE_GERM
    for m in range(2, 7):
        lengths = {"w2a": Fraction(3 * m - 1, m + 1) * comb(m + 1, 4),
                   "w2b": Fraction(3 * m - 2, m + 2) * comb(m + 2, 4)}
        for kind, want in lengths.items():
            o.equal(inv.zero_specialized_length(node, m, kind, T, F, SEED).value, want,
                    f"node zero-spec m={m} {kind}")
    # one trial suffices for an upper bound: the minimum over more trials can
    # only be smaller
    for label, f in corpus():
        mu = inv.milnor_number(f, F)
        for m in range(2, 7):
            for kind in ("w2a", "w2b"):
                try:
                    v = inv.zero_specialized_length(f, m, kind, 1, F, SEED, max_N=192).value
                except AdegError as exc:
                    o.expect(False, f"{label} m={m} {kind}: {type(exc).__name__}")
                    continue
                bound = mu * cf.node_length_zero(m, kind)
                o.expect(v <= bound, f"{label} m={m} {kind}: {v} > {bound}")


def c8_bounds(o: Outcome):
    weight2 = [(GERMS[label], m, kind) for label in GERMS for m, kind in COLUMNS if kind != "w1"]
    weight2 += [(f"y^{t} - x^{s}", 3, "w2a") for t in range(2, 7) for s in range(t, 7)]
    weight2 += [(f"y^2 - x^{s}", 4, "w2a") for s in range(2, 9)]
    for text, m, kind in weight2:
        f = parse_germ(text)
        v = ad(text, m, kind)
        lo, hi = cf.ad_bounds(inv.milnor_number(f, F), None, m, kind)
        o.expect(lo <= v <= hi, f"{text} m={m} {kind}: {v} outside [{lo}, {hi}]")
    for m in range(2, 9):
        for kind in ("w2a", "w2b"):
            v = inv.node_ad(m, kind, T, F, SEED).value
            lo, hi = cf.ad_bounds(1, None, m, kind)
            o.expect(lo <= v <= hi, f"node m={m} {kind}")
    weight1 = [(GERMS[label], m) for label in GERMS for m, kind in COLUMNS if kind == "w1"]
    weight1 += [(f"y^{t} - x^{s}", 2) for t in range(2, 7) for s in range(t, 7)]
    weight1 += [(f"y^2 - x^{s}", 3) for s in range(2, 9)]
    for text, m in weight1:
        f = parse_germ(text)
        try:
            delta = inv.delta_invariant(f)
        except Unavailable:
            continue
        v = ad(text, m, "w1")
        o.expect(v >= delta * m * (m - 1), f"{text} m={m} w1: {v} < {delta * m * (m - 1)}")


def c9_enumerative(o: Outcome):
    for d in range(3, 11):
        o.equal(cf.pencil_count(d, 4), 6 * (d - 3) * (3 * d - 2), f"pencil d={d}")
        o.equal(cf.septactic_pipeline(d), 9 * (d - 3) * (31 * d - 23), f"septactic d={d}")
    for g in range(2, 13):
        for n in range(1, 6):
            for kind in ("w2a", "w2b"):
                cls = cf.weierstrass_pipeline(g, n, kind)
                o.equal((cls.lambda_coeff, cls.delta0_coeff), cf.weierstrass_printed(g, n, kind),
                        f"weierstrass g={g} n={n} {kind}")


def _random_ideal(rng):
    a, b = rng.randint(1, 6), rng.randint(1, 6)
    gens = [{(a, 0): 1, (rng.randint(0, 3), rng.randint(1, 3)): rng.randrange(P)},
            {(0, b): 1, (rng.randint(1, 3), rng.randint(0, 3)): rng.randrange(P)}]
    for _ in range(rng.randint(0, 2)):
        g = {(rng.randint(0, 4), rng.randint(0, 4)): rng.randrange(1, P) for _ in range(3)}
        g.pop((0, 0), None)
        if g:
            gens.append(g)
    return gens


def c10_properties(o: Outcome):
    rng = random.Random(2024)
    # colength engine against both oracles
    for k in range(50):
        exps = [(rng.randint(1, 8), 0), (0, rng.randint(1, 8))]
        exps += [(rng.randint(0, 7), rng.randint(0, 7)) for _ in range(rng.randint(0, 3))]
        exps = [e for e in exps if e != (0, 0)]
        val = ideal_colength(lambda N: [TruncatedPoly.monomial(i, j, N, F) for i, j in exps]).value
        o.equal(val, oracles.staircase_count(exps), f"monomial ideal {exps}")

        gens = _random_ideal(rng)
        build = lambda N: [poly_from_terms(g, N, F) for g in gens]  # noqa: E731
        rep = ideal_colength(build, 4, 32)
        o.equal(rep.value, oracles.brute_stable_colength(gens, P, 4, 24), f"random ideal {k}")
        N0 = rep.truncation_used
        for N in (N0 + 2, 2 * N0):
            again = truncated_colength(build(N), N)
            o.expect(again.stable and again.value == rep.value, f"random ideal {k} at N={N}")
        vals = [truncated_colength(build(N), N).value for N in range(2, N0 + 3)]
        o.expect(vals == sorted(vals), f"random ideal {k} not monotone: {vals}")

    # relation annihilation
    N = 12
    for label, f in corpus():
        for m in (2, 3, 4):
            basis = dual_basis_small(f, m, F, N)
            for key, terms in taylor_relations(f, m, F, N).relations.items():
                coeffs = dict(terms)
                for i, th in enumerate(basis.functionals):
                    o.expect(apply_functional(th, coeffs, F, N).is_zero(),
                             f"{label} m={m} theta_{i + 1} on r{key}")
    for m in range(1, 9):
        n = 2 * m + 4
        basis = dual_basis_node(m, F, n)
        for ell in range(m + 1):
            uv = {(i, j): TruncatedPoly.monomial(m - ell - i, ell - j, n, F,
                                                 comb(m - ell, i) * comb(ell, j) * (-1) ** (m - i - j))
                  for i in range(m - ell + 1) for j in range(ell + 1)}
            red = node_reduce(uv, F, n)
            for i, e in enumerate(basis.functionals):
                o.expect(apply_functional(e, red, F, n).is_zero(), f"node m={m} e_{i} relation {ell}")

    # unit independence
    for label, f in corpus():
        for m in (2, 3, 4):
            for kind in inv.KINDS:
                try:
                    r = inv.ad_value(f, m, kind, trials=2, units=3, field=F, seed=SEED)
                    o.expect(len(r.unit_values) == 3 and len(set(r.unit_values)) == 1,
                             f"{label} m={m} {kind} units {r.unit_values}")
                except AdegError as exc:
                    o.expect(False, f"{label} m={m} {kind}: {exc}")

    # parser round trip
    for _ in range(100):
        terms = {}
        for _ in range(rng.randint(1, 6)):
            key = (rng.randint(0, 7), rng.randint(0, 7))
            if key != (0, 0):
                terms[key] = rng.choice([-1, 1]) * rng.randint(1, 40)
        if not terms:
            terms = {(1, 1): 1}
        spec = GermSpec.from_terms(terms)
        text = format_germ(spec)
        o.expect(parse_germ(text) == spec and format_germ(parse_germ(text)) == text,
                 f"round trip {text!r}")

    # JSON determinism
    for argv in (["ad", "--germ", "y^3-x^2*y", "--order", "4", "--type", "w2a"],
                 ["node", "--order", "6", "--type", "w2b"],
                 ["node", "--order", "4", "--flecnode"],
                 ["weierstrass", "--genus", "4", "--degree", "3", "--type", "w2a"]):
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            code = execute(argv + ["--json", "--seed", "9"], buf, io.StringIO())
            outs.append((code, buf.getvalue()))
        o.expect(outs[0] == outs[1] and outs[0][0] == 0, f"{argv[0]} output not reproducible")
        json.loads(outs[0][1])


CRITERIA = [
    (1, "tabulated values", c1_table1),
    (2, "node closed forms", c2_node),
    (3, "cusp", c3_cusp),
    (4, "hypercuspidal families", c4_families),
    (5, "identity suites", c5_identities),
    (6, "flecnode", c6_flecnode),
    (7, "zero-specialization", c7_zero_spec),
    (8, "bound sandwiches", c8_bounds),
    (9, "enumerative identities", c9_enumerative),
    (10, "property suites", c10_properties),
]


def evaluate(k: int, title: str, fn) -> Outcome:
    o = Outcome()
    try:
        fn(o)
    except AdegError as exc:
        o.expect(False, f"{type(exc).__name__}: {exc}")
    return o


@pytest.mark.parametrize("k,title,fn", CRITERIA, ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(k, title, fn, capsys):
    o = evaluate(k, title, fn)
    with capsys.disabled():
        print("\n" + o.line(k, title))
    assert o.ok, o.line(k, title)


if __name__ == "__main__":
    results = [evaluate(k, title, fn) for k, title, fn in CRITERIA]
    for (k, title, _), o in zip(CRITERIA, results):
        print(o.line(k, title))
    sys.exit(0 if all(o.ok for o in results) else 1)
