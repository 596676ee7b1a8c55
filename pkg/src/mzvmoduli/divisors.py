"""The divisors A(eps) and B(rho), and the disjointness certificates.

``divisor_A`` classifies every stable partition by its type.
``divisor_A_inductive`` rebuilds the same divisor by adding one marked point
at a time, lifting components, dropping the spurious lifts and adjoining
the two new poles; it deliberately shares no code with the classifier.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AmbiguousType, HypothesisViolated, TooSmall
from .labels import (
    SPECIAL_MASK,
    CyclicOrder,
    EpsilonWord,
    MarkedSet,
    labels_of,
    standard_order,
)
from .partitions import (
    WHOLE_SPACE,
    Carrier,
    StablePartition,
    carrier_mask,
    classify,
    enumerate_stable_partitions,
    pushforward,
    type_sets,
)
from .stasheff import Face, facet_partitions, face_partition_sets, make_face

_BIT = {"0": 1, "1": 2, "inf": 4}


@dataclass(frozen=True)
class Divisor:
    carrier: int
    components: frozenset[StablePartition]
    tag: str = ""

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(sorted(self.components))

    def __contains__(self, p):
        return p in self.components

    def as_dict(self) -> dict:
        return {
            "tag": self.tag,
            "labels": list(labels_of(self.carrier)),
            "count": len(self.components),
            "components": [str(p) for p in sorted(self.components)],
        }


@dataclass(frozen=True)
class DisjointnessReport:
    disjoint: bool
    shared: frozenset[StablePartition] = field(default_factory=frozenset)
    vertex_clear: bool | None = None
    offending_vertex: Face | None = None
    vertices_checked: int = 0
    certified: bool = False

    def as_dict(self) -> dict:
        return {
            "disjoint": self.disjoint,
            "shared": [str(p) for p in sorted(self.shared)],
            "vertex_clear": self.vertex_clear,
            "offending_vertex": None if self.offending_vertex is None
            else self.offending_vertex.as_dict(),
            "vertices_checked": self.vertices_checked,
            "certified": self.certified,
        }


def divisor_B(rho: CyclicOrder) -> Divisor:
    return Divisor(rho.carrier, facet_partitions(rho), f"B({rho})")


def divisor_A(eps: EpsilonWord) -> Divisor:
    """Boundary divisors whose partitions have a type with respect to eps."""
    S = MarkedSet(eps.n)
    sets = type_sets(eps)
    comps = []
    for p in enumerate_stable_partitions(S):
        found = classify(p.side, p.zero_part, sets)
        if len(found) > 1:
            raise AmbiguousType(f"{p} has types {[k.value for k in found]}")
        if found:
            comps.append(p)
    return Divisor(S.mask, frozenset(comps), f"A({eps})")


def _base_poles(carrier: int, new_bit: int, e: int) -> set[StablePartition]:
    """{s, e}|rest and {s, inf}|rest for the newest label s."""
    anchor = _BIT["1"] if e else _BIT["0"]
    return {
        StablePartition.from_mask(new_bit | anchor, carrier),
        StablePartition.from_mask(new_bit | _BIT["inf"], carrier),
    }


def spurious_lift(lifted: StablePartition, new_bit: int, e: int) -> bool:
    """A lift is spurious when s_{k+1} joins the part whose only special label is 1 - e."""
    part = lifted.side if lifted.side & new_bit else lifted.zero_part
    wrong = _BIT["0"] if e else _BIT["1"]
    return part & SPECIAL_MASK == wrong


def divisor_A_inductive(eps: EpsilonWord, trace: list | None = None) -> Divisor:
    """A(eps) built one marked point at a time.

    If ``trace`` is a list, one dict per step is appended recording the
    kept lifts, the dropped (spurious) lifts and the adjoined poles.
    """
    carrier = MarkedSet(1).mask
    comps = _base_poles(carrier, 1 << 3, eps[0])
    for k in range(1, eps.n):
        new_bit = 1 << (k + 3)
        new_carrier = carrier | new_bit
        e = eps[k]
        kept, dropped = set(), set()
        for p in comps:
            for lifted in (
                StablePartition(new_carrier, p.side | new_bit),
                StablePartition(new_carrier, p.side),
            ):
                (dropped if spurious_lift(lifted, new_bit, e) else kept).add(lifted)
        poles = _base_poles(new_carrier, new_bit, e)
        if trace is not None:
            trace.append({"n": k + 1, "kept": frozenset(kept),
                          "dropped": frozenset(dropped), "poles": frozenset(poles)})
        comps = kept | poles
        carrier = new_carrier
    return Divisor(carrier, frozenset(comps), f"A({eps})")


def blown_down_partitions(S: Carrier) -> frozenset[StablePartition]:
    """Boundary divisors contracted by M(S') -> M(S) x M({0,1,inf,s_last}).

    The three families s 0 X | Y 1 inf, s 1 X | Y 0 inf, s inf X | Y 0 1
    (X nonempty set of old movable labels) plus s X | Y 0 1 inf with |X| >= 2.
    """
    c = carrier_mask(S)
    movable = c & ~SPECIAL_MASK
    if bin(movable).count("1") < 2:
        raise TooSmall("need at least two movable labels")
    new_bit = 1 << (c.bit_length() - 1)
    old = movable & ~new_bit
    out = set()
    sub = old
    while sub:
        for alpha in ("0", "1", "inf"):
            out.add(StablePartition.from_mask(new_bit | _BIT[alpha] | sub, c))
        if bin(sub).count("1") >= 2:
            out.add(StablePartition.from_mask(new_bit | sub, c))
        sub = (sub - 1) & old
    return frozenset(out)


def beta_images(p: StablePartition):
    """Images of a boundary divisor under the two forgetful factors of beta."""
    c = p.carrier
    new_bit = 1 << (c.bit_length() - 1)
    old = c & ~SPECIAL_MASK & ~new_bit
    return pushforward(p, new_bit), pushforward(p, old)


def check_disjoint(eps: EpsilonWord, rho: CyclicOrder | None = None) -> DisjointnessReport:
    rho = standard_order(eps.n) if rho is None else rho
    shared = divisor_A(eps).components & divisor_B(rho).components
    return DisjointnessReport(
        disjoint=not shared,
        shared=frozenset(shared),
        certified=eps.convergent and rho == standard_order(eps.n),
    )


def check_vertex_avoidance(
    eps: EpsilonWord, rho: CyclicOrder | None = None
) -> DisjointnessReport:
    """Check that no vertex of the rho-cell lies on A(eps).

    A vertex lies on a boundary divisor exactly when the divisor's
    partition is one of the vertex's edge cuts.
    """
    if eps.n < 2:
        raise HypothesisViolated("vertex avoidance needs n >= 2")
    if not eps.convergent:
        raise HypothesisViolated(f"epsilon {eps} is not convergent")
    std = standard_order(eps.n)
    rho = std if rho is None else rho
    a = divisor_A(eps).components
    shared = frozenset(a & divisor_B(rho).components)
    offender = None
    checked = 0
    for parts in face_partition_sets(rho, eps.n):
        checked += 1
        if parts & a:
            offender = make_face(rho, parts)
            break
    return DisjointnessReport(
        disjoint=not shared,
        shared=shared,
        vertex_clear=offender is None,
        offending_vertex=offender,
        vertices_checked=checked,
        certified=rho == std,
    )


def blown_down_by_pushforward(S: Carrier) -> frozenset[StablePartition]:
    """Divisors whose images under both factors of beta are again divisors."""
    return frozenset(
        p for p in enumerate_stable_partitions(S)
        if all(img is not WHOLE_SPACE for img in beta_images(p))
    )
