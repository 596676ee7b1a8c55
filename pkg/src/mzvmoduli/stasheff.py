"""Faces of the Stasheff polytope attached to a cyclic order.

The facets of the closed cell for ``rho`` are the arc partitions of
``rho``; a codimension-k face is a set of k pairwise compatible
(distance 1) arc partitions, materialised as its rho-planar dual tree.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import BadCodim, EnumerationCap, MismatchedOrder, TooSmall
from .labels import CyclicOrder, canonicalize_cycle, labels_of
from .partitions import (
    Carrier,
    StablePartition,
    carrier_mask,
    delta,
    enumerate_stable_partitions,
    is_arc_partition,
    popcount,
)
from .trees import StableTree, contract_edge, planar_embedding, tree_from_partitions

DEFAULT_MAX_LABELS = 12


@dataclass(frozen=True)
class Face:
    order: CyclicOrder
    partitions: frozenset[StablePartition]
    tree: StableTree

    @property
    def codim(self) -> int:
        return len(self.partitions)

    @property
    def dimension(self) -> int:
        return len(self.order) - 3 - self.codim

    def as_dict(self) -> dict:
        return {
            "codim": self.codim,
            "partitions": [str(p) for p in sorted(self.partitions)],
            "tree": self.tree.as_dict(),
        }


def _check_size(rho: CyclicOrder, max_labels: int | None):
    cap = DEFAULT_MAX_LABELS if max_labels is None else max_labels
    if len(rho) > cap:
        raise EnumerationCap(f"|S| = {len(rho)} exceeds the enumeration cap {cap}")
    if len(rho) < 4:
        raise TooSmall("Stasheff faces need |S| >= 4")


def facet_partitions(rho: CyclicOrder) -> frozenset[StablePartition]:
    """Partitions obtained by cutting the rho-circle into two arcs."""
    if len(rho) < 4:
        raise TooSmall("need |S| >= 4")
    return frozenset(
        p for p in enumerate_stable_partitions(rho.carrier) if is_arc_partition(p, rho)
    )


def _compatible_sets(arcs: list[StablePartition], max_size: int):
    """Yield every set of pairwise distance-1 arcs with at most max_size members."""
    k = len(arcs)
    later = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if delta(arcs[i], arcs[j]) == 1:
                later[i] |= 1 << j

    def grow(chosen, candidates):
        yield chosen
        if len(chosen) == max_size:
            return
        c = candidates
        while c:
            j = (c & -c).bit_length() - 1
            c &= c - 1
            yield from grow(chosen + (j,), candidates & later[j])

    yield from grow((), (1 << k) - 1)


def _arcs(rho: CyclicOrder) -> list[StablePartition]:
    return sorted(facet_partitions(rho))


def face_partition_sets(
    rho: CyclicOrder, k: int, max_labels: int | None = None
) -> list[frozenset[StablePartition]]:
    """Partition sets of the codim-k faces, without building trees."""
    _check_size(rho, max_labels)
    n = len(rho) - 3
    if not 0 <= k <= n:
        raise BadCodim(f"codimension {k} outside 0..{n}")
    arcs = _arcs(rho)
    return [
        frozenset(arcs[i] for i in idx)
        for idx in _compatible_sets(arcs, k)
        if len(idx) == k
    ]


def make_face(rho: CyclicOrder, parts) -> Face:
    parts = frozenset(parts)
    tree = tree_from_partitions(parts, carrier=rho.carrier, allow_empty=True)
    return Face(rho, parts, planar_embedding(tree, rho))


def faces(rho: CyclicOrder, k: int, max_labels: int | None = None) -> list[Face]:
    return [make_face(rho, ps) for ps in face_partition_sets(rho, k, max_labels)]


def f_vector(rho: CyclicOrder, max_labels: int | None = None) -> tuple[int, ...]:
    """Face counts by codimension 0..n."""
    _check_size(rho, max_labels)
    n = len(rho) - 3
    counts = [0] * (n + 1)
    for idx in _compatible_sets(_arcs(rho), n):
        counts[len(idx)] += 1
    return tuple(counts)


def euler_characteristic(fv) -> int:
    """Alternating sum over face dimensions, the full cell included."""
    n = len(fv) - 1
    return sum((-1) ** (n - k) * f for k, f in enumerate(fv))


def face_boundary_relation(f: Face, g: Face) -> bool:
    """True iff g has one more edge than f and contracting one of them gives f."""
    if f.order != g.order:
        raise MismatchedOrder("faces belong to different cyclic orders")
    if g.codim != f.codim + 1:
        return False
    return any(contract_edge(g.tree, e) == f.tree for e in g.tree.edges)


def cyclic_orders(S: Carrier) -> list[CyclicOrder]:
    """Every unoriented cyclic order on S, in canonical form."""
    labels = labels_of(carrier_mask(S))
    seen = {}
    first, rest = labels[0], labels[1:]
    for perm in permutations(rest):
        rho = canonicalize_cycle((first, *perm))
        seen[rho.arrangement] = rho
    return [seen[a] for a in sorted(seen)]


def cell_census(S: Carrier, max_labels: int | None = None) -> dict:
    """Cells of the real moduli space, as faces over all cyclic orders.

    Faces shared by several top cells are counted once per cyclic order in
    ``face_incidences`` and once per locally planar tree in ``cells``.
    """
    c = carrier_mask(S)
    n = popcount(c) - 3
    orders = cyclic_orders(c)
    incidences = [0] * (n + 1)
    distinct: list[set] = [set() for _ in range(n + 1)]
    for rho in orders:
        for k in range(n + 1):
            for face in faces(rho, k, max_labels):
                incidences[k] += 1
                distinct[k].add(face.tree)
    cells = [len(d) for d in distinct]
    return {
        "orders": len(orders),
        "face_incidences": incidences,
        "cells": cells,
        "euler_characteristic": sum((-1) ** (n - k) * x for k, x in enumerate(cells)),
    }
