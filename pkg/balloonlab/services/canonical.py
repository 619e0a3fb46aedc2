"""
Canonical forms, isomorphism and automorphisms via nauty.

A CanonicalForm is the vertex count (2 bytes, big-endian) followed by the
nauty certificate, so graphs of different orders never collide.
"""
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import pynauty

from balloonlab.services.graph import Graph, iter_bits

logger = logging.getLogger(__name__)

CanonicalForm = bytes

# closing a subset under a larger group costs more than the duplicates it saves
SUBSET_REDUCTION_MAX_ORDER = 5000


def to_nauty(G: Graph) -> pynauty.Graph:
    adjacency = {v: list(iter_bits(row)) for v, row in enumerate(G.rows) if row}
    return pynauty.Graph(number_of_vertices=G.n, directed=False, adjacency_dict=adjacency)


def canonical_form(G: Graph) -> CanonicalForm:
    header = G.n.to_bytes(2, "big")
    if G.n == 0:
        return header
    return header + pynauty.certificate(to_nauty(G))


def is_isomorphic(F: Graph, H: Graph) -> bool:
    if F.n != H.n or F.edge_count != H.edge_count:
        return False
    if sorted(F.degrees()) != sorted(H.degrees()):
        return False
    return canonical_form(F) == canonical_form(H)


def canonical_graph(G: Graph) -> Graph:
    """The canonically labelled copy of G: isomorphic inputs give equal outputs."""
    if G.n == 0:
        return G
    labels = pynauty.canon_label(to_nauty(G))
    perm = [0] * G.n
    for position, vertex in enumerate(labels):
        perm[vertex] = position
    return G.relabel(perm)


class AutomorphismGroup:
    """Generators, order and vertex orbits of Aut(G)."""

    def __init__(self, G: Graph):
        self.n = G.n
        if G.n == 0:
            self.generators: List[List[int]] = []
            self.order = 1
            self.orbit_ids: List[int] = []
            return
        generators, size_mantissa, size_exponent, orbits, _ = pynauty.autgrp(to_nauty(G))
        self.generators = [list(g) for g in generators]
        self.order = int(round(size_mantissa * 10 ** size_exponent))
        self.orbit_ids = list(orbits)

    def orbits(self) -> List[List[int]]:
        grouped: Dict[int, List[int]] = {}
        for v, orbit in enumerate(self.orbit_ids):
            grouped.setdefault(orbit, []).append(v)
        return sorted(grouped.values())

    def orbit_representatives(self) -> List[int]:
        return [orbit[0] for orbit in self.orbits()]

    def subset_orbit(self, subset: Iterable[int]) -> List[Tuple[int, ...]]:
        start = tuple(sorted(subset))
        seen = {start}
        queue = deque([start])
        while queue:
            current = queue.popleft()
            for perm in self.generators:
                image = tuple(sorted(perm[v] for v in current))
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
        return sorted(seen)


def automorphism_group(G: Graph) -> AutomorphismGroup:
    return AutomorphismGroup(G)


def automorphism_orbits(G: Graph) -> List[List[int]]:
    return AutomorphismGroup(G).orbits()


def subset_orbit_representatives(G: Graph, subsets: Sequence[Iterable[int]]) -> List[Tuple[int, ...]]:
    """
    Keep one subset per orbit under Aut(G).

    The kept subset is the lexicographically least of its orbit. Groups larger
    than SUBSET_REDUCTION_MAX_ORDER are not reduced.
    """
    normalized = [tuple(sorted(s)) for s in subsets]
    group = AutomorphismGroup(G)
    if group.order > SUBSET_REDUCTION_MAX_ORDER or not group.generators:
        return sorted(set(normalized))
    kept = []
    covered = set()
    for subset in sorted(set(normalized)):
        if subset in covered:
            continue
        orbit = group.subset_orbit(subset)
        covered.update(orbit)
        kept.append(orbit[0])
    return kept


class GraphFamily:
    """
    Immutable set of graphs up to isomorphism.

    Members are stored as canonically labelled representatives and iterate in
    (order, size, canonical form) order.
    """

    __slots__ = ("_members",)

    def __init__(self, graphs: Iterable[Graph] = ()):
        members: Dict[CanonicalForm, Graph] = {}
        for G in graphs:
            form = canonical_form(G)
            if form not in members:
                members[form] = canonical_graph(G)
        self._members = dict(sorted(members.items(), key=lambda item: (item[1].n, item[1].edge_count, item[0])))

    @classmethod
    def of(cls, *graphs: Graph) -> "GraphFamily":
        return cls(graphs)

    def merge(self, other: "GraphFamily") -> "GraphFamily":
        return GraphFamily(list(self) + list(other))

    def strip_isolated(self) -> "GraphFamily":
        return GraphFamily(G.strip_isolated() for G in self)

    def forms(self) -> List[CanonicalForm]:
        return list(self._members)

    def items(self) -> Iterator[Tuple[CanonicalForm, Graph]]:
        return iter(self._members.items())

    def get(self, form: CanonicalForm) -> Optional[Graph]:
        return self._members.get(form)

    def __contains__(self, G: object) -> bool:
        return isinstance(G, Graph) and canonical_form(G) in self._members

    def __iter__(self) -> Iterator[Graph]:
        return iter(self._members.values())

    def __len__(self) -> int:
        return len(self._members)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GraphFamily) and set(self._members) == set(other._members)

    def __hash__(self) -> int:
        return hash(frozenset(self._members))

    def __repr__(self) -> str:
        return f"GraphFamily({[repr(G) for G in self]})"

    def __getstate__(self):
        return list(self._members.items())

    def __setstate__(self, state):
        self._members = dict(state)


def family_forms(family: GraphFamily) -> FrozenSet[CanonicalForm]:
    return frozenset(family.forms())
