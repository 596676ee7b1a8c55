"""Acceptance gate: nine criteria, each checked at its stated tolerance and
time limit.  Run under pytest, or directly with ``python tests/test_acceptance.py``
for a plain pass/fail listing.
"""
import json
import math
import time
from itertools import combinations
from math import comb

import pytest

from conftest import GOLDENS, call
from mzvmoduli.divisors import (
    beta_images,
    blown_down_by_pushforward,
    blown_down_partitions,
    check_disjoint,
    check_vertex_avoidance,
    divisor_A,
    divisor_A_inductive,
)
from mzvmoduli.errors import Divergent
from mzvmoduli.labels import (
    EpsilonWord,
    MarkedSet,
    compositions,
    encode_epsilon,
    epsilon_words,
    standard_order,
)
from mzvmoduli.partitions import WHOLE_SPACE, delta, enumerate_stable_partitions, parse_partition
from mzvmoduli.periods import iterated_integral, mzv_integral, mzv_series
from mzvmoduli.stasheff import f_vector
from mzvmoduli.trees import partitions_from_tree, tree_from_partitions

RESULTS: dict[int, tuple[bool, float, str]] = {}
SERIES_K = 10 ** 7


def _timed(number, limit, fn):
    start = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except AssertionError as exc:
        ok, detail = False, f"assertion failed: {exc}"
    elapsed = time.perf_counter() - start
    if ok and elapsed >= limit:
        ok, detail = False, f"too slow: {elapsed:.2f}s >= {limit}s"
    RESULTS[number] = (ok, elapsed, detail or "")
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s / {limit}s) {detail or ''}"
    print(line)
    return ok, line


def c1_pentagon():
    code_a, out_a, _ = call("divisor-a", "--eps", "10")
    code_b, out_b, _ = call("divisor-b", "--n", "2")
    assert code_a == code_b == 0
    a = set(json.loads(out_a)["components"])
    b = set(json.loads(out_b)["components"])
    gold_a = set(json.loads((GOLDENS / "divisor_a_eps_10.json").read_text())["components"])
    gold_b = set(json.loads((GOLDENS / "divisor_b_n2.json").read_text())["components"])
    assert a == gold_a and b == gold_b
    assert len(a) == len(b) == 5 and not a & b
    everything = {str(p) for p in enumerate_stable_partitions(MarkedSet(2))}
    assert a | b == everything and len(everything) == 10
    return "A and B are complementary pentagons"


def c2_disjoint_sweep():
    count = 0
    for n in range(2, 9):
        for eps in epsilon_words(n, convergent_only=True):
            assert check_disjoint(eps).disjoint, str(eps)
            count += 1
    assert count == sum(2 ** (n - 2) for n in range(2, 9))
    return f"{count} words"


def c3_vertex_sweep():
    count = vertices = 0
    for n in range(2, 8):
        catalan = comb(2 * (n + 1), n + 1) // (n + 2)
        for eps in epsilon_words(n, convergent_only=True):
            r = check_vertex_avoidance(eps)
            assert r.vertex_clear, f"{eps}: {r.offending_vertex}"
            assert r.vertices_checked == catalan
            count += 1
            vertices += r.vertices_checked
    return f"{count} words, {vertices} vertices"


def c4_inductive_oracle():
    count = 0
    for n in range(1, 9):
        for eps in epsilon_words(n):
            assert divisor_A_inductive(eps).components == divisor_A(eps).components, str(eps)
            count += 1
    assert count == 510
    return f"{count} words"


def _noncrossing(m, k):
    diags = [(i, j) for i in range(m) for j in range(i + 2, m) if not (i == 0 and j == m - 1)]

    def cross(d, e):
        return d[0] < e[0] < d[1] < e[1] or e[0] < d[0] < e[1] < d[1]

    return sum(1 for s in combinations(diags, k)
               if not any(cross(d, e) for d, e in combinations(s, 2)))


def c5_fvectors():
    expected = {2: (1, 5, 5), 3: (1, 9, 21, 14), 4: (1, 14, 56, 84, 42)}
    for n, fv in expected.items():
        got = f_vector(standard_order(n))
        assert got == fv, (n, got)
        assert tuple(_noncrossing(n + 3, k) for k in range(n + 1)) == fv
    for n in range(1, 7):
        catalan = comb(2 * (n + 1), n + 1) // (n + 2)
        assert f_vector(standard_order(n))[-1] == catalan == _noncrossing(n + 3, n)
    return "f-vectors and Catalan vertex counts"


REFERENCE = {
    (2,): math.pi ** 2 / 6,
    (3,): 1.2020569031595942,
    (1, 2): 1.2020569031595942,
    (4,): math.pi ** 4 / 90,
    (1, 3): math.pi ** 4 / 360,
    (2, 2): math.pi ** 4 / 120,
    (1, 1, 2): math.pi ** 4 / 90,
}


def c6_periods():
    comps = [c for w in range(2, 5) for c in compositions(w)]
    assert sorted(c.parts for c in comps) == sorted(REFERENCE)
    values = {}
    worst = 0.0
    for c in comps:
        s = mzv_series(c, SERIES_K)
        i = mzv_integral(encode_epsilon(c))
        assert s.error_bound <= 1e-4 and i.error_bound <= 1e-4, (c.parts, s.error_bound, i.error_bound)
        gap = abs(s.value - i.value)
        assert gap <= s.error_bound + i.error_bound, (c.parts, gap)
        worst = max(worst, gap)
        values[c.parts] = (s.value, i.value)
    for v in values[(2,)]:
        assert abs(v - 1.6449340668482264) <= 1.5e-6
    for a in values[(1, 2)]:
        for b in values[(3,)]:
            assert abs(a - b) <= 2e-5
    return f"{len(comps)} compositions, largest gap {worst:.2e}"


def c7_spot_values():
    a = iterated_integral((1, 0)).value
    b = iterated_integral((2, 2)).value
    assert abs(a + 1.6449340668482264) <= 1e-6, a
    assert abs(b - 0.5 * math.log(2) ** 2) <= 1e-8, b
    return f"I(1,0)={a:.12f} I(2,2)={b:.14f}"


def c8_divergence():
    for bad in [(0, 1), (0, 0), (2, 1), (1, 1)]:
        try:
            iterated_integral(bad)
        except Divergent:
            pass
        else:
            raise AssertionError(f"{bad} accepted")
    for word in [(0, 1), (0, 0), (1, 1), (0, 1, 0)]:
        try:
            mzv_integral(EpsilonWord(word))
        except Divergent:
            pass
        else:
            raise AssertionError(f"{word} accepted")
    r = check_disjoint(EpsilonWord((0,)))
    assert not r.disjoint
    assert r.shared == {parse_partition("{0,s1}|{1,inf}")}
    return "divergent inputs rejected; n=1 witness {0,s1}|{1,inf}"


def _strata(n):
    parts = sorted(enumerate_stable_partitions(MarkedSet(n)))
    out = []

    def grow(chosen, start):
        out.append(chosen)
        for i in range(start, len(parts)):
            if all(delta(parts[i], q) == 1 for q in chosen):
                grow(chosen + [parts[i]], i + 1)

    grow([], 0)
    return out


def c9_roundtrips():
    checked = 0
    for n in range(1, 5):
        for D in _strata(n):
            if not D:
                continue
            t = tree_from_partitions(D)
            assert partitions_from_tree(t) == set(D)
            assert tree_from_partitions(partitions_from_tree(t)) == t
            checked += 1
    for n in range(2, 5):
        S = MarkedSet(n)
        listed = blown_down_partitions(S)
        both_stable = blown_down_by_pushforward(S)
        new_bit = 1 << (S.mask.bit_length() - 1)
        for p in enumerate_stable_partitions(S):
            first, second = beta_images(p)
            new_part = p.side if p.side & new_bit else p.zero_part
            # the three families: both images are boundary divisors
            three = first is not WHOLE_SPACE and second is not WHOLE_SPACE
            # the extra family: s_new joins >= 2 old labels and no special point
            extra = first is not WHOLE_SPACE and second is WHOLE_SPACE and not new_part & 0b111
            assert (p in both_stable) == three
            assert (p in listed) == (three or extra), str(p)
            checked += 1
    return f"{checked} strata and partitions checked"


CRITERIA = [
    (1, 0.1, c1_pentagon),
    (2, 10, c2_disjoint_sweep),
    (3, 60, c3_vertex_sweep),
    (4, 10, c4_inductive_oracle),
    (5, 60, c5_fvectors),
    (6, 120, c6_periods),
    (7, 5, c7_spot_values),
    (8, 5, c8_divergence),
    (9, 30, c9_roundtrips),
]


@pytest.mark.parametrize("number, limit, fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, limit, fn):
    ok, line = _timed(number, limit, fn)
    assert ok, line


if __name__ == "__main__":
    import sys
    bad = 0
    for number, limit, fn in CRITERIA:
        bad += not _timed(number, limit, fn)[0]
    sys.exit(1 if bad else 0)
