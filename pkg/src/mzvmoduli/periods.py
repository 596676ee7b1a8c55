"""Numerical periods: multiple zeta values by series and by iterated integrals,
and the framed-motive report tying them to the divisors A and B.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .divisors import Divisor, DisjointnessReport, check_disjoint, check_vertex_avoidance
from .divisors import divisor_A, divisor_B
from .errors import BadK, BadOrder, CertificationFailed, Divergent, PoleOnPath
from .labels import CompositionIndex, EpsilonWord, encode_epsilon, standard_order
from .quadrature import TRUNCATION_FLOOR, simplex_integral

DEFAULT_K = 10**7
DEFAULT_ORDER = 40
# grid budget for the default order once the weight exceeds 4
MAX_DEFAULT_NODES = 5 * 10**7
# short chunks keep local prefix sums small, so tiny tail terms are not
# absorbed into a large running total
_CHUNK = 1 << 14


@dataclass(frozen=True)
class PeriodValue:
    value: float | complex
    error_bound: float
    method: str
    params: dict = field(default_factory=dict)
    rigorous: bool = False

    def as_dict(self) -> dict:
        v = self.value
        return {
            "value": {"re": v.real, "im": v.imag} if isinstance(v, complex) else v,
            "error_bound": self.error_bound,
            "method": self.method,
            "params": dict(self.params),
            "rigorous": self.rigorous,
        }


@dataclass(frozen=True)
class AnchorSequence:
    a: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(_clean(x) for x in self.a))
        if not self.a:
            raise ValueError("need at least one anchor")

    def check(self) -> None:
        """Raise unless the integral over the simplex converges."""
        a = self.a
        if a[0] == 0:
            raise Divergent("divergent: a_1 = 0")
        if a[-1] == 1:
            raise Divergent(f"divergent: a_{len(a)} = 1")
        for i, x in enumerate(a, start=1):
            if _imag(x) == 0 and 0 < _real(x) < 1:
                raise PoleOnPath(f"pole on the integration path: a_{i} = {x}")

    @property
    def admissible(self) -> bool:
        try:
            self.check()
        except (Divergent, PoleOnPath):
            return False
        return True


def _real(x):
    return x.real if isinstance(x, complex) else x


def _imag(x):
    return x.imag if isinstance(x, complex) else 0.0


def _clean(x):
    """Store real anchors as ints/floats so 0 and 1 are recognised exactly."""
    if isinstance(x, complex):
        if x.imag == 0:
            x = x.real
        else:
            return x
    if float(x).is_integer():
        return int(x)
    return float(x)


def default_order(n: int) -> int:
    if n <= 4:
        return DEFAULT_ORDER
    q = DEFAULT_ORDER
    while q > 2 and (2 * q + 1) ** n > MAX_DEFAULT_NODES:
        q -= 2
    return q


def series_tail_bound(c: CompositionIndex, K: int) -> float:
    m, last = c.depth, c.parts[-1]
    return m * (1 + math.log(K)) ** (m - 1) / ((last - 1) * K ** (last - 1))


def mzv_series(c: CompositionIndex, K: int = DEFAULT_K) -> PeriodValue:
    """Truncated nested sum over 0 < k_1 < ... < k_m <= K.

    Level j holds the prefix sums P_j(k) = sum over k_1 < ... < k_j <= k;
    each level is one cumulative-sum pass, processed in fixed-size chunks
    with carries so the summation order never depends on memory layout.
    The error bound adds a floating-point rounding estimate to the tail
    estimate.
    """
    m = c.depth
    if not isinstance(K, (int, np.integer)) or K < m:
        raise BadK(f"truncation K = {K} must be an integer >= depth {m}")
    carry = [0.0] * m
    for start in range(1, K + 1, _CHUNK):
        k = np.arange(start, min(K, start + _CHUNK - 1) + 1, dtype=np.float64)
        prev = None
        carry_prev = 0.0
        for j, nj in enumerate(c.parts):
            term = k ** (-float(nj))
            if j:
                # P_{j-1}(k - 1): previous level shifted by one index
                shifted = np.empty_like(prev)
                shifted[0] = carry_prev
                shifted[1:] = prev[:-1]
                term = term * shifted
            local = np.cumsum(term)
            carry_prev = carry[j]
            prev = local + carry_prev
            carry[j] = carry_prev + float(local[-1])
    value = carry[-1]
    rounding = m * (K / _CHUNK + _CHUNK) * np.finfo(np.float64).eps * value
    return PeriodValue(
        value=value,
        error_bound=series_tail_bound(c, K) + rounding,
        method="series",
        params={"K": int(K)},
        rigorous=m == 1,
    )


def wedge_integral(factors: Sequence[tuple[int, complex]], Q: int | None = None) -> PeriodValue:
    """Integral over the simplex of a wedge of forms dt_i / (t_i - a).

    ``factors`` lists (variable index, anchor) pairs in the order they are
    wedged; the simplex carries the orientation dt_1 ^ ... ^ dt_n, so the
    result is the sign of the reordering times the iterated integral.
    """
    n = len(factors)
    idx = [i for i, _ in factors]
    if sorted(idx) != list(range(n)):
        raise BadOrder(f"factor indices {idx} are not a permutation of 0..{n - 1}")
    sign = 1
    for x in range(n):
        for y in range(x + 1, n):
            if idx[x] > idx[y]:
                sign = -sign
    anchors = [a for _, a in sorted(factors, key=lambda f: f[0])]
    base = iterated_integral(anchors, Q)
    return PeriodValue(
        value=sign * base.value,
        error_bound=base.error_bound,
        method=base.method,
        params={**base.params, "sign": sign},
    )


def iterated_integral(a, Q: int | None = None) -> PeriodValue:
    """The integral of prod dt_i / (t_i - a_i) over 0 < t_1 < ... < t_n < 1."""
    seq = a if isinstance(a, AnchorSequence) else AnchorSequence(tuple(a))
    seq.check()
    n = len(seq.a)
    Q = default_order(n) if Q is None else Q
    fine, coarse = simplex_integral(seq.a, Q)
    err = abs(fine - coarse) + TRUNCATION_FLOOR * max(1.0, abs(fine))
    value = fine if isinstance(fine, complex) and fine.imag != 0 else float(_real(fine))
    return PeriodValue(value=value, error_bound=err, method="quadrature",
                       params={"Q": Q, "nodes_per_axis": 2 * Q + 1})


def mzv_integral(eps: EpsilonWord, Q: int | None = None) -> PeriodValue:
    """(-1)^m times the iterated integral of the epsilon forms."""
    if not eps.convergent:
        raise Divergent(f"divergent: epsilon {eps} needs eps_1 = 1 and eps_n = 0")
    raw = iterated_integral(eps.values, Q)
    sign = -1 if eps.depth % 2 else 1
    return PeriodValue(value=sign * raw.value, error_bound=raw.error_bound,
                       method="quadrature", params=raw.params)


@dataclass(frozen=True)
class FramedMotiveReport:
    composition: CompositionIndex
    epsilon: EpsilonWord
    divisor_A: Divisor
    divisor_B: Divisor
    disjointness: DisjointnessReport
    vertex_avoidance: DisjointnessReport
    period_series: PeriodValue
    period_integral: PeriodValue

    @property
    def weight(self) -> int:
        return self.epsilon.n

    @property
    def sign(self) -> int:
        return -1 if self.composition.depth % 2 else 1

    @property
    def discrepancy(self) -> float:
        return abs(self.period_series.value - self.period_integral.value)

    @property
    def periods_agree(self) -> bool:
        return self.discrepancy <= self.period_series.error_bound + self.period_integral.error_bound

    def as_dict(self) -> dict:
        return {
            "composition": list(self.composition.parts),
            "epsilon": list(self.epsilon.values),
            "weight": self.weight,
            "depth": self.composition.depth,
            "sign": self.sign,
            "divisor_A": self.divisor_A.as_dict(),
            "divisor_B": self.divisor_B.as_dict(),
            "disjointness": self.disjointness.as_dict(),
            "vertex_avoidance": self.vertex_avoidance.as_dict(),
            "period_series": self.period_series.as_dict(),
            "period_integral": self.period_integral.as_dict(),
            "discrepancy": self.discrepancy,
            "periods_agree": self.periods_agree,
        }


def framed_report(c: CompositionIndex, K: int = DEFAULT_K, Q: int | None = None) -> FramedMotiveReport:
    eps = encode_epsilon(c)
    rho = standard_order(eps.n)
    disj = check_disjoint(eps, rho)
    if not disj.disjoint:
        raise CertificationFailed(f"A and B share components for {c}", witness=disj.shared)
    verts = check_vertex_avoidance(eps, rho)
    if not verts.vertex_clear:
        raise CertificationFailed(f"a vertex of the cell lies on A for {c}",
                                  witness=verts.offending_vertex)
    report = FramedMotiveReport(
        composition=c,
        epsilon=eps,
        divisor_A=divisor_A(eps),
        divisor_B=divisor_B(rho),
        disjointness=disj,
        vertex_avoidance=verts,
        period_series=mzv_series(c, K),
        period_integral=mzv_integral(eps, Q),
    )
    if not report.periods_agree:
        raise CertificationFailed(
            f"series and integral disagree for {c}: discrepancy {report.discrepancy:.3g}",
            witness=(report.period_series, report.period_integral),
        )
    return report
