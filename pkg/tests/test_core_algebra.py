import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from adeg import _fallback
from adeg.colength import ideal_colength, truncated_colength
from adeg.errors import ColengthDiverged, NotAUnit, SmallCharacteristic, UsageError
from adeg.field import PrimeField, is_prime
from adeg.poly import (TruncatedPoly, invert_unit, mul_truncated, partial_derivative,
                       poly_from_terms)

import oracles

P = 7919


def tp(terms, N, F=PrimeField(P)):
    return poly_from_terms(terms, N, F)


# -- field -------------------------------------------------------------------

def test_field_rejects_composites_and_huge():
    with pytest.raises(UsageError):
        PrimeField(7917)
    with pytest.raises(UsageError):
        PrimeField(2**31 + 11)
    assert is_prime(7919) and not is_prime(1)


def test_inverse_of_two():
    assert PrimeField(P).inv(2) == 3960


def test_small_characteristic():
    with pytest.raises(SmallCharacteristic):
        PrimeField(13).require_order(4)
    PrimeField(17).require_order(4)


def test_field_axioms_on_random_triples():
    F = PrimeField(P)
    rng = random.Random(5)
    for _ in range(1000):
        a, b, c = (rng.randrange(P) for _ in range(3))
        assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    with pytest.raises(NotAUnit):
        F.inv(0)


# -- truncated products ---------------------------------------------------------

def test_mul_examples(F):
    assert tp({(0, 0): 1, (1, 0): 1}, 2) * tp({(0, 0): 1, (0, 1): 1}, 2) == \
        tp({(0, 0): 1, (1, 0): 1, (0, 1): 1}, 2)
    s = tp({(1, 0): 1, (0, 1): 1}, 3)
    assert s * s == tp({(2, 0): 1, (1, 1): 2, (0, 2): 1}, 3)
    a = tp({(0, 0): 1, (1, 0): 1, (0, 1): 1}, 3)
    b = tp({(0, 0): 1, (1, 0): -1, (0, 1): -1}, 3)
    assert a * b == tp({(0, 0): 1, (2, 0): -1, (1, 1): -2, (0, 2): -1}, 3)


def test_mismatched_operands():
    with pytest.raises(UsageError):
        tp({(1, 0): 1}, 3) * tp({(1, 0): 1}, 4)
    with pytest.raises(UsageError):
        tp({(1, 0): 1}, 3) + tp({(1, 0): 1}, 3, PrimeField(101))


def test_canonical_form_drops_zero_and_high_terms():
    a = tp({(0, 0): P, (3, 0): 5, (1, 1): 2}, 3)
    assert a.coeffs == {(1, 1): 2}


poly_terms = st.dictionaries(
    st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda k: k[0] + k[1] <= 6),
    st.integers(-50, 50), max_size=12)


@settings(max_examples=200, deadline=None)
@given(poly_terms, poly_terms, st.integers(1, 14))
def test_product_matches_untruncated_oracle(a, b, N):
    F = PrimeField(P)
    A, B = tp(a, N), tp(b, N)
    exact = oracles.dict_mul({k: v % P for k, v in a.items()},
                             {k: v % P for k, v in b.items()}, P, N)
    assert (A * B).coeffs == exact


@settings(max_examples=50, deadline=None)
@given(poly_terms, poly_terms)
def test_dense_and_dict_products_agree(a, b):
    from adeg import _kernel
    N = 12
    A, B = tp(a, N), tp(b, N)
    dense = TruncatedPoly.from_dense(_kernel.mul_trunc(A.to_dense(), B.to_dense(), N, P), N, A.field)
    assert dense == mul_truncated(A, B)


def test_partial_examples():
    assert partial_derivative(tp({(0, 2): 1, (3, 0): -1}, 6), "x") == tp({(2, 0): -3}, 6)
    assert partial_derivative(tp({(1, 1): 1}, 6), "y") == tp({(1, 0): 1}, 6)
    assert partial_derivative(tp({(2, 3): 1}, 6), "x") == tp({(1, 3): 2}, 6)
    with pytest.raises(UsageError):
        partial_derivative(tp({(1, 1): 1}, 6), "z")


def test_invert_examples():
    assert invert_unit(tp({(0, 0): 1, (1, 0): 1}, 4)) == tp({(0, 0): 1, (1, 0): -1, (2, 0): 1, (3, 0): -1}, 4)
    assert invert_unit(tp({(0, 0): 2}, 4)) == tp({(0, 0): 3960}, 4)
    assert invert_unit(tp({(0, 0): 1, (1, 0): 1, (0, 1): 1}, 2)) == tp({(0, 0): 1, (1, 0): -1, (0, 1): -1}, 2)
    with pytest.raises(NotAUnit):
        invert_unit(tp({(1, 0): 1}, 4))


@settings(max_examples=60, deadline=None)
@given(poly_terms, st.integers(1, P - 1), st.integers(1, 20))
def test_inverse_property(tail, c0, N):
    tail = {k: v for k, v in tail.items() if k != (0, 0)}
    u = tp({**tail, (0, 0): c0}, N)
    assert u * invert_unit(u) == TruncatedPoly.one(N, u.field)


# -- colength -----------------------------------------------------------------

def test_colength_examples():
    N = 16
    rep = ideal_colength([tp({(1, 0): 1}, N), tp({(0, 1): 1}, N)])
    assert (rep.value, rep.stable) == (1, True)
    assert ideal_colength([tp({(2, 0): 1}, N), tp({(0, 3): 1}, N)]).value == 6
    assert ideal_colength([tp({(2, 0): 1, (0, 3): -1}, N), tp({(0, 2): 1}, N)]).value == 4


def test_colength_example_against_brute_force():
    gens = [{(2, 0): 1, (0, 3): P - 1}, {(0, 2): 1}]
    val, stable = oracles.brute_colength(gens, 8, P)
    assert (val, stable) == (4, True)


def test_colength_diverges_on_non_isolated():
    with pytest.raises(ColengthDiverged):
        ideal_colength([tp({(1, 0): 1}, 64), tp({(1, 1): 1}, 64)], 8, 64)
    with pytest.raises(ColengthDiverged):
        ideal_colength(lambda N: [tp({(2, 0): 1}, N)], 8, 32)


def test_colength_bad_ranges():
    with pytest.raises(UsageError):
        ideal_colength([tp({(1, 0): 1}, 8)], 10, 4)
    with pytest.raises(UsageError):
        ideal_colength([])


monomial_ideals = st.tuples(
    st.integers(1, 9), st.integers(1, 9),
    st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)), max_size=4))


@settings(max_examples=50, deadline=None)
@given(monomial_ideals)
def test_monomial_ideals_match_staircase(data):
    a, b, extra = data
    exps = [(a, 0), (0, b)] + [e for e in extra if e != (0, 0)]
    gens = lambda N: [TruncatedPoly.monomial(i, j, N, PrimeField(P)) for i, j in exps]  # noqa: E731
    assert ideal_colength(gens).value == oracles.staircase_count(exps)


def _random_ideal(rng: random.Random):
    """A finite-colength ideal: two random polynomials plus pure powers."""
    a, b = rng.randint(1, 6), rng.randint(1, 6)
    gens = [{(a, 0): 1, **{(rng.randint(0, 3), rng.randint(1, 3)): rng.randrange(P)}},
            {(0, b): 1, **{(rng.randint(1, 3), rng.randint(0, 3)): rng.randrange(P)}}]
    for _ in range(rng.randint(0, 2)):
        g = {(rng.randint(0, 4), rng.randint(0, 4)): rng.randrange(1, P) for _ in range(3)}
        g.pop((0, 0), None)
        if g:
            gens.append(g)
    return gens


@pytest.mark.parametrize("case", range(50))
def test_random_ideals_against_brute_force_and_monotone(case):
    rng = random.Random(1000 + case)
    gens = _random_ideal(rng)
    build = lambda N: [tp(g, N) for g in gens]  # noqa: E731
    rep = ideal_colength(build, 4, 32)
    assert rep.value == oracles.brute_stable_colength(gens, P, 4, 24)
    # once stable, larger truncations agree
    N0 = rep.truncation_used
    for N in (N0 + 2, 2 * N0):
        again = truncated_colength(build(N), N)
        assert again.stable and again.value == rep.value
    # candidates never decrease with N
    vals = [truncated_colength(build(N), N).value for N in range(2, N0 + 3)]
    assert vals == sorted(vals)


def test_kernel_backends_agree():
    rng = np.random.default_rng(3)
    for N in (3, 7, 12):
        gens = []
        for _ in range(3):
            A = rng.integers(0, P, (N, N))
            A[rng.random((N, N)) > 0.3] = 0
            ii, jj = np.indices((N, N))
            A[(ii + jj >= N) | (ii + jj < 1)] = 0
            gens.append(A.astype(np.int64))
        from adeg import _kernel
        assert _kernel.span_profile(gens, N, P) == _fallback.span_profile(gens, N, P)
        assert (_kernel.mul_trunc(gens[0], gens[1], N, P)
                == _fallback.mul_trunc(gens[0], gens[1], N, P)).all()


def test_compiled_backend_is_active():
    from adeg import _kernel
    if _kernel.BACKEND != "compiled":
        pytest.skip("extension not built; running on the numpy fallback")
    from adeg import _kernels  # noqa: F401


def test_redundant_generators_do_not_change_the_span():
    """Shift pruning in the compiled kernel must agree with the plain
    elimination when many rows are dependent."""
    from adeg import _kernel
    rng = random.Random(9)
    for N in (6, 10, 14):
        base = _random_ideal(rng)
        gens = [tp(g, N) for g in base]
        # products and sums of generators are redundant rows
        gens += [gens[0] * tp({(1, 1): 3, (0, 2): 1}, N), gens[0] + gens[1]]
        dense = [g.to_dense() for g in gens]
        assert _kernel.span_profile(dense, N, P) == _fallback.span_profile(dense, N, P)


def test_benchmark_quick_run():
    from adeg import _kernel
    if _kernel.BACKEND != "compiled":
        pytest.skip("benchmark compares against the compiled extension")
    import subprocess
    import sys
    from pathlib import Path
    script = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    proc = subprocess.run([sys.executable, str(script), "--quick", "--repeat", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert "span_profile" in proc.stdout and "node m=4" in proc.stdout
