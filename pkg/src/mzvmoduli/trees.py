"""Dual trees of boundary strata.

A :class:`StableTree` has integer vertices ``0..V-1``, undirected edges, one
tail per label of the carrier, and optionally a locally planar structure:
for every vertex a cyclic sequence of its flags.  A flag is either a label
string (a tail) or an ``int`` naming the neighbouring vertex (an edge).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence, Union

from .errors import BadTree, EmptyPartitionSet, MismatchedCarrier, NotAStratum, NotAnEdge
from .labels import CyclicOrder, label_bit, labels_of
from .partitions import Carrier, StablePartition, carrier_mask, delta, is_arc, popcount

Flag = Union[str, int]


def _low_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotation- and reflection-invariant form of a cyclic int sequence."""
    seq = list(seq)
    if not seq:
        return ()
    best = None
    for s in (seq, seq[::-1]):
        k = s.index(min(s))
        cand = tuple(s[k:] + s[:k])
        if best is None or cand < best:
            best = cand
    return best


@dataclass(frozen=True, eq=False)
class StableTree:
    carrier: int
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    tails: tuple[tuple[str, int], ...]
    planar: tuple[tuple[Flag, ...], ...] | None = None

    def __post_init__(self):
        V = self.n_vertices
        if V < 1:
            raise BadTree("a tree needs at least one vertex")
        edges = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        object.__setattr__(self, "edges", edges)
        tails = tuple(sorted(self.tails, key=lambda lt: label_bit(lt[0])))
        object.__setattr__(self, "tails", tails)
        if len(set(edges)) != len(edges) or any(u == v for u, v in edges):
            raise BadTree("repeated edge or loop")
        if any(not (0 <= u < V and 0 <= v < V) for e in edges for u, v in [e]):
            raise BadTree("edge endpoint out of range")
        if len(edges) != V - 1:
            raise BadTree(f"{V} vertices need {V - 1} edges, got {len(edges)}")
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in self.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != V:
            raise BadTree("edges do not connect the vertices")
        tail_mask = 0
        for lab, v in tails:
            if not 0 <= v < V:
                raise BadTree(f"tail {lab} at missing vertex {v}")
            tail_mask |= 1 << label_bit(lab)
        if tail_mask != self.carrier or len(tails) != popcount(self.carrier):
            raise BadTree("tails must be a bijection from the carrier labels")
        for v in range(V):
            if self.valence(v) < 3:
                raise BadTree(f"vertex {v} has valence {self.valence(v)} < 3")
        if self.planar is not None:
            planar = tuple(tuple(p) for p in self.planar)
            object.__setattr__(self, "planar", planar)
            if len(planar) != V:
                raise BadTree("planar structure must cover every vertex")
            for v in range(V):
                if sorted(map(_flag_sort_key, planar[v])) != sorted(
                    map(_flag_sort_key, self.flags(v))
                ):
                    raise BadTree(f"cyclic order at vertex {v} does not list its flags")

    # -- structure -----------------------------------------------------
    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def _tails_at(self) -> tuple[tuple[str, ...], ...]:
        at: list[list[str]] = [[] for _ in range(self.n_vertices)]
        for lab, v in self.tails:
            at[v].append(lab)
        return tuple(tuple(a) for a in at)

    def tails_at(self, v: int) -> tuple[str, ...]:
        return self._tails_at[v]

    def tail_vertex(self, label: str) -> int:
        bit = label_bit(label)
        for lab, v in self.tails:
            if label_bit(lab) == bit:
                return v
        raise KeyError(label)

    def flags(self, v: int) -> tuple[Flag, ...]:
        return self._tails_at[v] + self.adjacency[v]

    def valence(self, v: int) -> int:
        return len(self._tails_at[v]) + len(self.adjacency[v])

    @cached_property
    def _far_masks(self) -> dict[tuple[int, int], int]:
        """(u, v) -> labels reachable from v without crossing back to u."""
        out: dict[tuple[int, int], int] = {}

        def far(u, v):
            if (u, v) in out:
                return out[(u, v)]
            m = 0
            for lab in self._tails_at[v]:
                m |= 1 << label_bit(lab)
            for w in self.adjacency[v]:
                if w != u:
                    m |= far(v, w)
            out[(u, v)] = m
            return m

        for u, v in self.edges:
            far(u, v)
            far(v, u)
        return out

    def flag_mask(self, v: int, flag: Flag) -> int:
        """Labels lying beyond ``flag`` as seen from vertex ``v``."""
        if isinstance(flag, str):
            return 1 << label_bit(flag)
        return self._far_masks[(v, flag)]

    def cut(self, edge: tuple[int, int]) -> StablePartition:
        u, v = edge
        if tuple(sorted(edge)) not in self.edges:
            raise NotAnEdge(f"{edge} is not an internal edge")
        return StablePartition.from_mask(self._far_masks[(u, v)], self.carrier)

    def partitions(self) -> frozenset[StablePartition]:
        return frozenset(self.cut(e) for e in self.edges)

    # -- equality ------------------------------------------------------
    @cached_property
    def key(self):
        vkeys = []
        for v in range(self.n_vertices):
            if self.planar is None:
                vkeys.append(frozenset(self.flag_mask(v, f) for f in self.flags(v)))
            else:
                vkeys.append(_canonical_cycle([self.flag_mask(v, f) for f in self.planar[v]]))
        return (self.carrier, self.planar is not None, frozenset(vkeys))

    def __eq__(self, other):
        if not isinstance(other, StableTree):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        parts = ", ".join(sorted(map(str, self.partitions())))
        kind = "planar " if self.planar is not None else ""
        return f"<{kind}StableTree V={self.n_vertices} [{parts}]>"

    # -- serialisation -------------------------------------------------
    def as_dict(self) -> dict:
        return {
            "labels": list(labels_of(self.carrier)),
            "vertices": list(range(self.n_vertices)),
            "edges": [list(e) for e in self.edges],
            "tails": {lab: v for lab, v in self.tails},
            "cyclic_orders": None if self.planar is None else [list(p) for p in self.planar],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StableTree":
        carrier = 0
        for lab in data["labels"]:
            carrier |= 1 << label_bit(lab)
        planar = data.get("cyclic_orders")
        return cls(
            carrier=carrier,
            n_vertices=len(data["vertices"]),
            edges=tuple(tuple(e) for e in data["edges"]),
            tails=tuple(data["tails"].items()),
            planar=None if planar is None else tuple(tuple(p) for p in planar),
        )


def _flag_sort_key(flag: Flag):
    return (0, label_bit(flag)) if isinstance(flag, str) else (1, flag)


def _renumbered(carrier, adjacency, tails, planar) -> StableTree:
    """Canonical vertex numbering: BFS from the vertex carrying 0.

    ``adjacency`` is a dict vertex -> set of neighbours, ``tails`` a dict
    label -> vertex and ``planar`` an optional dict vertex -> flag list.
    """
    root = tails["0"]

    far: dict[tuple[int, int], int] = {}

    def far_mask(u, v):
        if (u, v) not in far:
            m = 0
            for lab, w in tails.items():
                if w == v:
                    m |= 1 << label_bit(lab)
            for w in adjacency[v]:
                if w != u:
                    m |= far_mask(v, w)
            far[(u, v)] = m
        return far[(u, v)]

    order = [root]
    parent = {root: None}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        kids = [y for y in adjacency[x] if y != parent[x]]
        kids.sort(key=lambda y: _low_bit(far_mask(x, y)))
        for y in kids:
            parent[y] = x
            order.append(y)
            queue.append(y)
    new = {old: i for i, old in enumerate(order)}
    edges = tuple((new[x], new[y]) for x in adjacency for y in adjacency[x] if x < y)
    new_tails = tuple((lab, new[v]) for lab, v in tails.items())
    new_planar = None
    if planar is not None:
        new_planar = tuple(
            tuple(f if isinstance(f, str) else new[f] for f in planar[old]) for old in order
        )
    return StableTree(carrier, len(order), edges, new_tails, new_planar)


def open_stratum_tree(S: Carrier) -> StableTree:
    c = carrier_mask(S)
    return StableTree(c, 1, (), tuple((lab, 0) for lab in labels_of(c)))


def check_pairwise(D: Iterable[StablePartition]) -> None:
    """Raise :class:`NotAStratum` unless all pairwise distances equal 1."""
    for a, b in combinations(sorted(D), 2):
        d = delta(a, b)
        if d != 1:
            raise NotAStratum(a, b, d)


def tree_from_partitions(
    D: Iterable[StablePartition],
    carrier: Carrier | None = None,
    allow_empty: bool = False,
) -> StableTree:
    """The maximal stable tree whose edge cuts are exactly the partitions D.

    Splits are inserted one at a time: each new split refines the unique
    vertex whose flags all fall on one side of it.
    """
    D = sorted(set(D))
    if not D:
        if allow_empty and carrier is not None:
            return open_stratum_tree(carrier)
        raise EmptyPartitionSet("empty partition set (use allow_empty for the open stratum)")
    c = D[0].carrier
    if carrier is not None and carrier_mask(carrier) != c:
        raise MismatchedCarrier("partitions do not live on the given carrier")
    for p in D:
        if p.carrier != c:
            raise MismatchedCarrier(f"{p} and {D[0]} live on different label sets")
    check_pairwise(D)

    adjacency: dict[int, set[int]] = {0: set()}
    tails = {lab: 0 for lab in labels_of(c)}

    def reach(u, v):
        # labels beyond v when arriving from u
        m = 0
        stack = [(u, v)]
        while stack:
            a, b = stack.pop()
            for lab, w in tails.items():
                if w == b:
                    m |= 1 << label_bit(lab)
            stack.extend((b, w) for w in adjacency[b] if w != a)
        return m

    for p in D:
        x = p.side
        target = None
        for v in adjacency:
            masks = [(lab, 1 << label_bit(lab)) for lab, w in tails.items() if w == v]
            masks += [(w, reach(v, w)) for w in adjacency[v]]
            if all(m & x == m or m & x == 0 for _, m in masks):
                target = (v, masks)
                break
        if target is None:  # pragma: no cover - excluded by the pairwise check
            raise NotAStratum(p, p, -1)
        v, masks = target
        w = len(adjacency)
        adjacency[w] = set()
        for flag, m in masks:
            if m & x:
                if isinstance(flag, str):
                    tails[flag] = w
                else:
                    adjacency[v].discard(flag)
                    adjacency[flag].discard(v)
                    adjacency[flag].add(w)
                    adjacency[w].add(flag)
        adjacency[v].add(w)
        adjacency[w].add(v)
    return _renumbered(c, adjacency, tails, None)


def partitions_from_tree(t: StableTree) -> frozenset[StablePartition]:
    return t.partitions()


def contract_edge(t: StableTree, edge: tuple[int, int]) -> StableTree:
    """Collapse an internal edge, merging its endpoints.

    Planar structures are spliced: with u's order rotated to end at v and
    v's order rotated to start at u, the merged order is u's flags followed
    by v's flags (both contact flags dropped).
    """
    u, v = edge
    if tuple(sorted(edge)) not in t.edges:
        raise NotAnEdge(f"{edge} is not an internal edge of the tree")
    adjacency = {x: set(t.adjacency[x]) for x in range(t.n_vertices) if x != v}
    adjacency[u].discard(v)
    for w in t.adjacency[v]:
        if w != u:
            adjacency[w].discard(v)
            adjacency[w].add(u)
            adjacency[u].add(w)
    tails = {lab: (u if x == v else x) for lab, x in t.tails}
    planar = None
    if t.planar is not None:
        pu = list(t.planar[u])
        pv = list(t.planar[v])
        ku, kv = pu.index(v), pv.index(u)
        pu = pu[ku + 1:] + pu[:ku]
        pv = pv[kv + 1:] + pv[:kv]
        planar = {}
        for x in adjacency:
            if x == u:
                planar[x] = pu + pv
            else:
                planar[x] = [u if f == v else f for f in t.planar[x]]
    return _renumbered(t.carrier, adjacency, tails, planar)


def stratum_signature(t: StableTree) -> tuple[tuple[int, ...], int]:
    """Sorted flag counts |F(v)| and the stratum dimension sum(|F(v)| - 3)."""
    counts = tuple(sorted(t.valence(v) for v in range(t.n_vertices)))
    return counts, sum(k - 3 for k in counts)


def planar_embedding(t: StableTree, rho: CyclicOrder) -> StableTree:
    """Attach the locally planar structure induced by drawing t inside the rho-circle.

    At each vertex the flags cut the circle into consecutive arcs; the flags
    are listed in the order their arcs appear along ``rho``.
    """
    if rho.carrier != t.carrier:
        raise MismatchedCarrier("cyclic order and tree have different labels")
    bits = rho.bits()
    m = len(bits)
    planar = []
    for v in range(t.n_vertices):
        starts = []
        for f in t.flags(v):
            mask = t.flag_mask(v, f)
            if not is_arc(mask, rho):
                raise BadTree(f"tree is not planar for order ({rho})")
            start = next(
                i for i in range(m)
                if (mask >> bits[i]) & 1 and not (mask >> bits[i - 1]) & 1
            )
            starts.append((start, f))
        planar.append(tuple(f for _, f in sorted(starts, key=lambda sf: sf[0])))
    return StableTree(t.carrier, t.n_vertices, t.edges, t.tails, tuple(planar))


def to_dot(t: StableTree) -> str:
    """Undirected DOT text; internal vertices v*, tails as plaintext leaves."""
    lines = ["graph stratum {"]
    lines.append("  node [shape=circle];")
    for v in range(t.n_vertices):
        lines.append(f'  v{v} [label="v{v}"];')
    for lab, _ in t.tails:
        lines.append(f'  "t_{lab}" [shape=plaintext, label="{lab}"];')
    for u, v in t.edges:
        lines.append(f"  v{u} -- v{v};")
    for lab, v in t.tails:
        lines.append(f'  v{v} -- "t_{lab}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
