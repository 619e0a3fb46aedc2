"""
Subgraph containment (not induced) by bitset backtracking.

Pattern vertices are placed in a connectivity-first order; the candidates
for a vertex are the host vertices of large enough degree adjacent to the
images of all its already placed neighbours. Host vertices with equal open
or closed neighbourhoods are interchangeable while unused, so only the
lowest unused member of each such twin class is tried.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from balloonlab.services.canonical import GraphFamily, automorphism_group
from balloonlab.services.graph import Graph, graph_profile, iter_bits

logger = logging.getLogger(__name__)


class SearchStatus(str, Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class EmbeddingResult:
    status: SearchStatus
    embedding: Optional[Tuple[int, ...]] = None  # pattern vertex -> host vertex
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


class _Exhausted(Exception):
    pass


class _PatternPlan:
    """Search plans for a pattern, reused across hosts."""

    def __init__(self, pattern: Graph):
        self.pattern = pattern
        self.core_vertices = [v for v, row in enumerate(pattern.rows) if row]
        self.isolated = pattern.isolated_vertices()
        self.core = pattern.induced_subgraph(self.core_vertices)
        self.degrees = self.core.degrees()
        self.default_start = max(range(self.core.n), key=lambda v: (self.degrees[v], -v)) if self.core.n else 0
        self._orders: Dict[int, Tuple[List[int], List[List[int]]]] = {}
        self._orbit_reps: Optional[List[int]] = None

    def order_from(self, start: int) -> Tuple[List[int], List[List[int]]]:
        if start not in self._orders:
            P = self.core
            order = [start]
            placed = 1 << start
            while len(order) < P.n:
                v = max(
                    (u for u in range(P.n) if not placed >> u & 1),
                    key=lambda u: ((P.rows[u] & placed).bit_count(), self.degrees[u], -u),
                )
                order.append(v)
                placed |= 1 << v
            position = {v: i for i, v in enumerate(order)}
            back = [[position[u] for u in iter_bits(P.rows[v]) if position[u] < i] for i, v in enumerate(order)]
            self._orders[start] = (order, back)
        return self._orders[start]

    def orbit_representatives(self) -> List[int]:
        if self._orbit_reps is None:
            self._orbit_reps = automorphism_group(self.core).orbit_representatives()
        return self._orbit_reps


@lru_cache(maxsize=1024)
def _pattern_plan(pattern: Graph) -> _PatternPlan:
    return _PatternPlan(pattern)


def _degree_dominated(pattern: Graph, host: Graph) -> bool:
    host_degrees = sorted(host.degrees(), reverse=True)
    return all(p <= h for p, h in zip(sorted(pattern.degrees(), reverse=True), host_degrees))


class SubgraphMatcher:
    """
    One containment query: does `pattern` embed in `host`?

    Args:
        host: graph searched in.
        pattern: graph searched for.
        budget: maximum number of search nodes, or None for no limit.
        anchor: if given, only embeddings whose image contains this host vertex count.
        prefilter: also compare matching and covering numbers before searching.
    """

    def __init__(self, host: Graph, pattern: Graph, budget: Optional[int] = None,
                 anchor: Optional[int] = None, prefilter: bool = True):
        self.host = host
        self.pattern = pattern
        self.budget = budget
        self.anchor = anchor
        self.prefilter = prefilter
        self.nodes = 0

    # -------------------------------------------------------------- public

    def run(self) -> EmbeddingResult:
        host, pattern = self.host, self.pattern
        if self.anchor is not None and not 0 <= self.anchor < host.n:
            return EmbeddingResult(SearchStatus.NOT_FOUND)
        if pattern.n == 0:
            status = SearchStatus.NOT_FOUND if self.anchor is not None else SearchStatus.FOUND
            return EmbeddingResult(status, () if status is SearchStatus.FOUND else None)
        if self._rejected():
            return EmbeddingResult(SearchStatus.NOT_FOUND)

        plan = _pattern_plan(pattern)
        try:
            if plan.core.n == 0:
                core_image: Optional[List[int]] = []
            elif self.anchor is not None and not plan.isolated:
                core_image = self._anchored(plan)
            else:
                core_image = self._unanchored(plan)
        except _Exhausted:
            logger.debug(f"Subgraph search exhausted after {self.nodes} nodes ({pattern!r} in {host!r})")
            return EmbeddingResult(SearchStatus.EXHAUSTED, nodes=self.nodes)
        if core_image is None:
            return EmbeddingResult(SearchStatus.NOT_FOUND, nodes=self.nodes)
        return EmbeddingResult(SearchStatus.FOUND, self._complete(plan, core_image), self.nodes)

    # -------------------------------------------------------------- filters

    def _rejected(self) -> bool:
        host, pattern = self.host, self.pattern
        if pattern.n > host.n or pattern.edge_count > host.edge_count:
            return True
        if not _degree_dominated(pattern, host):
            return True
        if not self.prefilter or pattern.edge_count == 0:
            return False
        hp, pp = graph_profile(host), graph_profile(pattern)
        if hp.bipartite and not pp.bipartite:
            return True
        if pp.nu > hp.nu:
            return True
        # subgraphs never need a larger vertex cover than their host
        return hp.beta is not None and pp.beta is not None and pp.beta > hp.beta

    # -------------------------------------------------------------- search

    def _setup(self, plan: _PatternPlan, distinguished: Optional[int]) -> None:
        host = self.host
        degrees = host.degrees()
        need = sorted(set(plan.degrees))
        self.deg_ok = {}
        for d in need:
            mask = 0
            for v, hd in enumerate(degrees):
                if hd >= d:
                    mask |= 1 << v
            self.deg_ok[d] = mask

        # twin classes; an anchor is distinguished and stays alone
        groups: Dict[Tuple[int, int], List[int]] = {}
        loose = [v for v in range(host.n) if v != distinguished]
        for v in loose:
            groups.setdefault((0, host.rows[v]), []).append(v)
        classes: List[List[int]] = []
        singles = []
        for members in groups.values():
            (classes if len(members) > 1 else singles).append(members)
        closed: Dict[Tuple[int, int], List[int]] = {}
        for (v,) in singles:
            closed.setdefault((1, host.rows[v] | 1 << v), []).append(v)
        classes.extend(closed.values())
        if distinguished is not None:
            classes.append([distinguished])
        self.class_of = [0] * host.n
        for c, members in enumerate(classes):
            for v in members:
                self.class_of[v] = c
        self.class_members = [sorted(members) for members in classes]
        self.class_used = [0] * len(classes)
        self.rep_mask = 0
        for members in self.class_members:
            self.rep_mask |= 1 << members[0]
        self.used = 0

    def _search(self, plan: _PatternPlan, start: int, root_mask: int) -> Optional[List[int]]:
        order, back = plan.order_from(start)
        degrees = [plan.degrees[v] for v in order]
        image = [0] * len(order)
        rows = self.host.rows
        budget = self.budget
        m = len(order)

        def extend(i: int) -> bool:
            if i == m:
                return True
            cand = self.deg_ok[degrees[i]] & ~self.used
            if i == 0:
                cand &= root_mask
            else:
                cand &= self.rep_mask
                for j in back[i]:
                    cand &= rows[image[j]]
                    if not cand:
                        return False
            for h in iter_bits(cand):
                self.nodes += 1
                if budget is not None and self.nodes > budget:
                    raise _Exhausted
                c = self.class_of[h]
                members = self.class_members[c]
                k = self.class_used[c]
                was_rep = members[k] == h
                image[i] = h
                self.used |= 1 << h
                if was_rep:
                    self.class_used[c] = k + 1
                    self.rep_mask ^= 1 << h
                    if k + 1 < len(members):
                        self.rep_mask |= 1 << members[k + 1]
                if extend(i + 1):
                    return True
                if was_rep:
                    if k + 1 < len(members):
                        self.rep_mask ^= 1 << members[k + 1]
                    self.rep_mask |= 1 << h
                    self.class_used[c] = k
                self.used &= ~(1 << h)
            return False

        if not extend(0):
            return None
        core_image = [0] * m
        for i, v in enumerate(order):
            core_image[v] = image[i]
        return core_image

    def _unanchored(self, plan: _PatternPlan) -> Optional[List[int]]:
        self._setup(plan, None)
        # the root may be fixed to one vertex per automorphism orbit
        root_mask = 0
        for v in automorphism_group(self.host).orbit_representatives():
            root_mask |= 1 << v
        # roots also respect twin classes
        return self._search(plan, plan.default_start, root_mask & self.rep_mask)

    def _anchored(self, plan: _PatternPlan) -> Optional[List[int]]:
        self._setup(plan, self.anchor)
        anchor_degree = self.host.degree(self.anchor)
        for p in plan.orbit_representatives():
            if plan.degrees[p] > anchor_degree:
                continue
            core_image = self._search(plan, p, 1 << self.anchor)
            if core_image is not None:
                return core_image
        return None

    def _complete(self, plan: _PatternPlan, core_image: List[int]) -> Tuple[int, ...]:
        embedding = [0] * self.pattern.n
        taken = set(core_image)
        for v, h in zip(plan.core_vertices, core_image):
            embedding[v] = h
        free = [h for h in range(self.host.n) if h not in taken]
        if self.anchor is not None and self.anchor in free:
            free.remove(self.anchor)
            free.insert(0, self.anchor)
        for v, h in zip(plan.isolated, free):
            embedding[v] = h
        return tuple(embedding)


def find_embedding(host: Graph, pattern: Graph, budget: Optional[int] = None,
                   anchor: Optional[int] = None, prefilter: bool = True) -> EmbeddingResult:
    """
    Search for a copy of `pattern` in `host`.

    Returns:
        EmbeddingResult: FOUND with a validated witness, NOT_FOUND, or EXHAUSTED
        when `budget` search nodes were spent without a decision.
    """
    result = SubgraphMatcher(host, pattern, budget=budget, anchor=anchor, prefilter=prefilter).run()
    if result.found and not validate_embedding(host, pattern, result.embedding):
        raise AssertionError(f"embedding of {pattern!r} in {host!r} failed validation: {result.embedding}")
    return result


def contains_subgraph(host: Graph, pattern: Graph, anchor: Optional[int] = None, prefilter: bool = True) -> bool:
    return find_embedding(host, pattern, anchor=anchor, prefilter=prefilter).found


def is_family_free(host: Graph, family: GraphFamily) -> bool:
    return not any(contains_subgraph(host, member) for member in family)


def validate_embedding(host: Graph, pattern: Graph, embedding: Sequence[int]) -> bool:
    """Check an embedding against the host's networkx adjacency."""
    if embedding is None or len(embedding) != pattern.n or len(set(embedding)) != pattern.n:
        return False
    if any(not 0 <= h < host.n for h in embedding):
        return False
    host_nx = host.to_networkx()
    return all(host_nx.has_edge(embedding[u], embedding[v]) for u, v in pattern.edges())
