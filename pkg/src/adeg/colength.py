"""dim_k R/I for ideals of finite colength in k[[x, y]], by linear algebra
on the truncations R/(x, y)^N."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

from . import _kernel
from .errors import ColengthDiverged, UsageError
from .poly import TruncatedPoly

DEFAULT_START_N = 8
DEFAULT_MAX_N = 64

Generators = Union[Sequence[TruncatedPoly], Callable[[int], Sequence[TruncatedPoly]]]


@dataclass(frozen=True)
class ColengthReport:
    value: int
    stable: bool
    truncation_used: int
    rank: int


def truncated_colength(gens: Sequence[TruncatedPoly], N: int) -> ColengthReport:
    """Colength of (I + m^N) together with the Nakayama certificate.

    stable is True when every monomial of degree N - 1 lies in the span; then
    m^(N-1) is inside I and the value is the true colength.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return ColengthReport(N * (N + 1) // 2, False, N, 0)
    field = gens[0].field
    for g in gens:
        if g.field != field:
            raise UsageError("generators live over different fields")
        if g.N < N:
            raise UsageError(f"generator known only to order {g.N} < {N}")
    dense = [g.to_dense(N) for g in gens]
    rank, top = _kernel.span_profile(dense, N, field.p)
    return ColengthReport(N * (N + 1) // 2 - rank, top == N, N, rank)


def ideal_colength(gens: Generators, start_N: int = DEFAULT_START_N,
                   max_N: int = DEFAULT_MAX_N) -> ColengthReport:
    """Stable colength of the ideal generated by gens.

    gens is either a list of TruncatedPoly (then truncation can only grow up
    to the smallest order they are known to) or a callable N -> list that
    rebuilds the generators at order N.
    """
    if start_N < 1 or max_N < start_N:
        raise UsageError(f"bad truncation range {start_N}..{max_N}")
    if callable(gens):
        build = gens
        cap = max_N
    else:
        gens = list(gens)
        if not gens:
            raise UsageError("empty generator list")
        cap = min(max_N, min(g.N for g in gens))
        start_N = min(start_N, cap)
        build = lambda N: [g.truncate(N) for g in gens]  # noqa: E731

    N = start_N
    last = None
    while True:
        report = truncated_colength(build(N), N)
        if report.stable:
            return report
        last = report
        if N >= cap:
            break
        N = min(2 * N, cap)
    raise ColengthDiverged(
        f"no stable colength up to N={last.truncation_used} "
        f"(last candidate {last.value})")
