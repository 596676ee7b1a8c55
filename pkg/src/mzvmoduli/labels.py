"""Label sets, cyclic orders, epsilon words and composition indices.

Labels are plain strings: ``"0"``, ``"1"``, ``"inf"`` and ``"s1"``, ``"s2"``,
... for the movable points.  Every label owns a fixed bit position
(0 -> bit 0, 1 -> bit 1, inf -> bit 2, s_i -> bit i + 2), so any subset of
labels is an ``int`` mask and set algebra is mask arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadArrangement, BadComposition, NotConvergent

ZERO, ONE, INF = "0", "1", "inf"
SPECIAL = (ZERO, ONE, INF)
SPECIAL_MASK = 0b111

_ALIASES = {"∞": INF, "infty": INF, "infinity": INF}


def movable(i: int) -> str:
    return f"s{i}"


def normalize_label(label: str) -> str:
    label = label.strip()
    return _ALIASES.get(label, label)


def label_bit(label: str) -> int:
    """Bit position of a label."""
    label = normalize_label(label)
    if label == ZERO:
        return 0
    if label == ONE:
        return 1
    if label == INF:
        return 2
    if label.startswith("s") and label[1:].isdigit() and int(label[1:]) >= 1:
        return int(label[1:]) + 2
    raise BadArrangement(f"unknown label {label!r}")


def bit_label(bit: int) -> str:
    if bit < 3:
        return SPECIAL[bit]
    return movable(bit - 2)


def mask_of(labels: Iterable[str]) -> int:
    mask = 0
    for lab in labels:
        bit = 1 << label_bit(lab)
        if mask & bit:
            raise BadArrangement(f"duplicate label {lab!r}")
        mask |= bit
    return mask


def labels_of(mask: int) -> tuple[str, ...]:
    """Labels in a mask, in bit order (0, 1, inf, s1, s2, ...)."""
    out = []
    bit = 0
    while mask >> bit:
        if (mask >> bit) & 1:
            out.append(bit_label(bit))
        bit += 1
    return tuple(out)


@dataclass(frozen=True)
class MarkedSet:
    """The label set {0, 1, inf, s1, ..., sn}."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise BadArrangement("n must be nonnegative")

    @property
    def size(self) -> int:
        return self.n + 3

    @property
    def mask(self) -> int:
        return (1 << (self.n + 3)) - 1

    @property
    def labels(self) -> tuple[str, ...]:
        return labels_of(self.mask)

    @property
    def movable_labels(self) -> tuple[str, ...]:
        return tuple(movable(i) for i in range(1, self.n + 1))

    @property
    def standard_order(self) -> "CyclicOrder":
        return standard_order(self.n)

    @classmethod
    def from_mask(cls, mask: int) -> "MarkedSet":
        n = mask.bit_length() - 3
        if n < 0 or mask != (1 << (n + 3)) - 1:
            raise BadArrangement(f"{labels_of(mask)} is not a standard label set")
        return cls(n)


def is_standard_carrier(mask: int) -> bool:
    return mask >= SPECIAL_MASK and (mask + 1) & mask == 0


@dataclass(frozen=True)
class CyclicOrder:
    """An unoriented cyclic order, stored in canonical form.

    Build instances with :func:`canonicalize_cycle`; the constructor assumes
    the arrangement is already canonical.
    """

    arrangement: tuple[str, ...]

    def __len__(self):
        return len(self.arrangement)

    def __iter__(self):
        return iter(self.arrangement)

    @property
    def carrier(self) -> int:
        return mask_of(self.arrangement)

    def position(self, label: str) -> int:
        return self.arrangement.index(normalize_label(label))

    def positions(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.arrangement)}

    def bits(self) -> tuple[int, ...]:
        return tuple(label_bit(lab) for lab in self.arrangement)

    def __str__(self):
        return ",".join(self.arrangement)


def canonicalize_cycle(
    raw: Sequence[str], carrier: int | None = None
) -> CyclicOrder:
    """Canonical representative of the rotation/reflection class of ``raw``.

    Rotate so that ``0`` comes first, then keep whichever reading direction
    is lexicographically smaller in label-bit order.
    """
    seq = [normalize_label(x) for x in raw]
    try:
        mask = mask_of(seq)
    except BadArrangement as exc:
        raise BadArrangement(f"bad arrangement {tuple(raw)}: {exc}") from None
    if carrier is not None and mask != carrier:
        raise BadArrangement(
            f"arrangement {tuple(seq)} does not cover {labels_of(carrier)}"
        )
    if mask & SPECIAL_MASK != SPECIAL_MASK:
        raise BadArrangement("arrangement must contain 0, 1 and inf")
    k = seq.index(ZERO)
    fwd = seq[k:] + seq[:k]
    bwd = [fwd[0]] + fwd[1:][::-1]
    best = min(fwd, bwd, key=lambda s: [label_bit(x) for x in s])
    return CyclicOrder(tuple(best))


def standard_order(n: int) -> CyclicOrder:
    """The order 0 < s1 < ... < sn < 1 < inf < 0."""
    return canonicalize_cycle(
        [ZERO, *(movable(i) for i in range(1, n + 1)), ONE, INF]
    )


@dataclass(frozen=True)
class EpsilonWord:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) < 1:
            raise BadComposition("an epsilon word needs n >= 1 letters")
        if any(v not in (0, 1) for v in self.values):
            raise BadComposition(f"epsilon letters must be 0 or 1: {self.values}")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def convergent(self) -> bool:
        return self.values[0] == 1 and self.values[-1] == 0

    @property
    def depth(self) -> int:
        return sum(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __str__(self):
        return "".join(map(str, self.values))

    @classmethod
    def parse(cls, text: str) -> "EpsilonWord":
        text = text.replace(",", "").strip()
        if not text or set(text) - {"0", "1"}:
            raise BadComposition(f"bad epsilon word {text!r}")
        return cls(tuple(int(c) for c in text))


@dataclass(frozen=True)
class CompositionIndex:
    """Index (n1, ..., nm) of a convergent multiple zeta value."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if not self.parts:
            raise BadComposition("empty composition")
        if any(p < 1 for p in self.parts):
            raise BadComposition(f"parts must be positive: {self.parts}")
        if self.parts[-1] < 2:
            raise BadComposition(f"last part must be >= 2: {self.parts}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))

    @classmethod
    def parse(cls, text: str) -> "CompositionIndex":
        return cls(parse_parts(text))


def parse_parts(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise BadComposition(f"bad composition {text!r}") from None
    if not parts or any(p < 1 for p in parts):
        raise BadComposition(f"bad composition {text!r}")
    return parts


def epsilon_from_parts(parts: Sequence[int]) -> EpsilonWord:
    """Apply the block rule without requiring the last part to be >= 2.

    Each part k contributes the block (1, 0, ..., 0) of length k.
    """
    values: list[int] = []
    for k in parts:
        if k < 1:
            raise BadComposition(f"parts must be positive: {tuple(parts)}")
        values.append(1)
        values.extend([0] * (k - 1))
    return EpsilonWord(tuple(values))


def encode_epsilon(c: CompositionIndex) -> EpsilonWord:
    return epsilon_from_parts(c.parts)


def decode_composition(e: EpsilonWord) -> CompositionIndex:
    if not e.convergent:
        raise NotConvergent(
            f"epsilon {e} is not convergent (need eps_1 = 1 and eps_n = 0)"
        )
    parts: list[int] = []
    for v in e.values:
        if v == 1:
            parts.append(1)
        else:
            parts[-1] += 1
    return CompositionIndex(tuple(parts))


def compositions(weight: int) -> list[CompositionIndex]:
    """All convergent compositions of the given weight."""
    if weight < 2:
        return []
    out = []
    for bits in range(1 << (weight - 2)):
        middle = [(bits >> i) & 1 for i in range(weight - 2)]
        out.append(decode_composition(EpsilonWord((1, *middle, 0))))
    return out


def epsilon_words(n: int, convergent_only: bool = False) -> list[EpsilonWord]:
    words = []
    for bits in range(1 << n):
        w = EpsilonWord(tuple((bits >> (n - 1 - i)) & 1 for i in range(n)))
        if not convergent_only or w.convergent:
            words.append(w)
    return words
