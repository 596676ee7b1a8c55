"""Stable 2-partitions of a label set and the operations on them.

A partition is stored as the part *not* containing ``0`` (the "side"),
encoded as a label mask, together with the carrier mask of the full label
set.  Carriers are usually the standard ``{0, 1, inf, s1..sn}`` but the
forgetful pushforward produces arbitrary subsets containing 0, 1, inf.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

from .errors import (
    AmbiguousType,
    BadArrangement,
    BadForgetSet,
    LengthMismatch,
    MismatchedCarrier,
    TooSmall,
)
from .labels import (
    SPECIAL_MASK,
    CyclicOrder,
    EpsilonWord,
    MarkedSet,
    labels_of,
    mask_of,
)

Carrier = Union[MarkedSet, int]


def popcount(x: int) -> int:
    return bin(x).count("1")


def carrier_mask(S: Carrier) -> int:
    return S.mask if isinstance(S, MarkedSet) else int(S)


@dataclass(frozen=True, order=True)
class StablePartition:
    carrier: int
    side: int

    def __post_init__(self):
        c, s = self.carrier, self.side
        if c & SPECIAL_MASK != SPECIAL_MASK:
            raise BadArrangement("carrier must contain 0, 1 and inf")
        if s & ~c:
            raise BadArrangement("side is not contained in the carrier")
        if s & 1:
            raise BadArrangement("side must not contain 0")
        if popcount(s) < 2 or popcount(c) - popcount(s) < 2:
            raise BadArrangement(
                f"unstable partition {self._text(c, s)}"
            )

    @classmethod
    def from_part(cls, part: Iterable[str], carrier: Carrier) -> "StablePartition":
        """Partition with one part given by labels; the other is implied."""
        c = carrier_mask(carrier)
        m = mask_of(part)
        if m & ~c:
            raise MismatchedCarrier(f"labels {labels_of(m)} not in carrier")
        return cls(c, (c ^ m) if m & 1 else m)

    @classmethod
    def from_mask(cls, mask: int, carrier: Carrier) -> "StablePartition":
        c = carrier_mask(carrier)
        return cls(c, (c ^ mask) if mask & 1 else mask)

    @property
    def zero_part(self) -> int:
        return self.carrier ^ self.side

    @property
    def parts(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        return labels_of(self.zero_part), labels_of(self.side)

    @staticmethod
    def _text(c: int, s: int) -> str:
        a, b = labels_of(c ^ s), labels_of(s)
        return "{" + ",".join(a) + "}|{" + ",".join(b) + "}"

    def __str__(self):
        return self._text(self.carrier, self.side)

    def __repr__(self):
        return f"StablePartition({self})"


def parse_partition(text: str, carrier: Carrier | None = None) -> StablePartition:
    """Parse ``"{0,s2}|{1,inf,s1}"``; braces are optional."""
    try:
        left, right = text.split("|")
    except ValueError:
        raise BadArrangement(f"bad partition text {text!r}") from None

    def part(chunk):
        chunk = chunk.strip().strip("{}").strip()
        return [x for x in (y.strip() for y in chunk.split(",")) if x]

    a, b = mask_of(part(left)), mask_of(part(right))
    if a & b:
        raise BadArrangement(f"parts overlap in {text!r}")
    c = a | b
    if carrier is not None and c != carrier_mask(carrier):
        raise MismatchedCarrier(f"{text!r} does not cover {labels_of(carrier_mask(carrier))}")
    return StablePartition.from_mask(a, c)


def enumerate_stable_partitions(S: Carrier) -> frozenset[StablePartition]:
    return _enumerate(carrier_mask(S))


@lru_cache(maxsize=64)
def _enumerate(c: int) -> frozenset[StablePartition]:
    m = popcount(c)
    if m < 4:
        raise TooSmall(f"|S| = {m} < 4 has no boundary divisors")
    bits = [1 << b for b in range(c.bit_length()) if (c >> b) & 1 and b != 0]
    out = set()
    # subsets of the 0-free labels with 2 <= |T| <= m - 2
    for code in range(1 << len(bits)):
        k = popcount(code)
        if 2 <= k <= m - 2:
            side = 0
            for i, b in enumerate(bits):
                if (code >> i) & 1:
                    side |= b
            out.add(StablePartition(c, side))
    return frozenset(out)


def _check_same(a: StablePartition, b: StablePartition):
    if a.carrier != b.carrier:
        raise MismatchedCarrier(f"{a} and {b} live on different label sets")


def delta(sigma: StablePartition, tau: StablePartition) -> int:
    """Number of nonempty intersections of parts, minus two."""
    _check_same(sigma, tau)
    s1, s2 = sigma.side, sigma.zero_part
    t1, t2 = tau.side, tau.zero_part
    return sum(1 for x in (s1 & t1, s1 & t2, s2 & t1, s2 & t2) if x) - 2


class PartitionType(enum.Enum):
    TYPE0 = "0"
    TYPE1 = "1"
    TYPE_INF = "inf"
    NONE = "none"


def type_sets(eps: EpsilonWord) -> dict[str, int]:
    """Masks of S(0), S(1), S(inf) for an epsilon word."""
    s0 = s1 = 0
    for i, v in enumerate(eps.values, start=1):
        bit = 1 << (i + 2)
        if v:
            s1 |= bit
        else:
            s0 |= bit
    return {"0": s0, "1": s1, "inf": s0 | s1}


_KINDS = ((1, "0", PartitionType.TYPE0), (2, "1", PartitionType.TYPE1),
          (4, "inf", PartitionType.TYPE_INF))


def classify(side: int, zero_part: int, sets: dict[str, int]) -> list[PartitionType]:
    """Every type realised by the partition side | zero_part."""
    found = []
    for a, alpha, kind in _KINDS:
        for part in (side, zero_part):
            rest = part & ~a
            if part & a and rest and not rest & ~sets[alpha]:
                found.append(kind)
    return found


def partition_type(sigma: StablePartition, eps: EpsilonWord) -> PartitionType:
    if sigma.carrier != (1 << (eps.n + 3)) - 1:
        raise LengthMismatch(
            f"epsilon of length {eps.n} does not match carrier {labels_of(sigma.carrier)}"
        )
    found = classify(sigma.side, sigma.zero_part, type_sets(eps))
    if len(found) > 1:
        raise AmbiguousType(f"{sigma} has types {[k.value for k in found]}")
    return found[0] if found else PartitionType.NONE


def is_arc(mask: int, rho: CyclicOrder) -> bool:
    """True iff the labels in ``mask`` form one contiguous arc of ``rho``."""
    inside = [(mask >> b) & 1 for b in rho.bits()]
    # number of boundary changes around the circle
    changes = sum(1 for i in range(len(inside)) if inside[i] != inside[i - 1])
    return changes == 2 or (changes == 0 and bool(inside[0]))


def is_arc_partition(sigma: StablePartition, rho: CyclicOrder) -> bool:
    if rho.carrier != sigma.carrier:
        raise MismatchedCarrier(f"{sigma} and order ({rho}) differ in labels")
    return is_arc(sigma.side, rho)


class _WholeSpace:
    """Marker for a pushforward whose image is the entire target space."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "WholeSpace"

    def __reduce__(self):
        return (_WholeSpace, ())


WHOLE_SPACE = _WholeSpace()


def pushforward(
    sigma: StablePartition, forget: Iterable[str] | int
) -> StablePartition | _WholeSpace:
    """Image of a boundary divisor under the morphism forgetting ``forget``."""
    t = forget if isinstance(forget, int) else mask_of(forget)
    if t & ~sigma.carrier:
        raise BadForgetSet(f"{labels_of(t)} not all in the carrier")
    if t & SPECIAL_MASK:
        raise BadForgetSet("cannot forget 0, 1 or inf")
    c = sigma.carrier & ~t
    if popcount(c) < 4:
        raise BadForgetSet(f"forgetting {labels_of(t)} leaves fewer than 4 labels")
    side = sigma.side & ~t
    if popcount(side) < 2 or popcount(c) - popcount(side) < 2:
        return WHOLE_SPACE
    return StablePartition(c, side)
