"""
Graph value type and graph parameters.

Adjacency is stored as one integer bit row per vertex, so neighbourhood
intersection is a single `&`. Graphs are immutable and hashable by their
labelled adjacency; isomorphism lives in `canonical`.
"""
import logging
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from balloonlab.errors import DomainError, GuardrailError, ParameterError

logger = logging.getLogger(__name__)

MAX_VERTICES = 512
CHROMATIC_LIMIT = 32

Edge = Tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """Finite simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "rows", "_edges")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0:
            raise ParameterError(f"vertex count must be non-negative, got {n}")
        if n > MAX_VERTICES:
            raise ParameterError(f"graphs are capped at {MAX_VERTICES} vertices, got {n}")
        if len(rows) != n:
            raise ParameterError(f"expected {n} adjacency rows, got {len(rows)}")
        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row & ~full or row >> v & 1:
                raise ParameterError(f"row {v} has a self-loop or out-of-range neighbour")
            for u in iter_bits(row):
                if not rows[u] >> v & 1:
                    raise ParameterError(f"adjacency is not symmetric at ({v},{u})")
        self.n = n
        self.rows = tuple(rows)
        self._edges = sum(row.bit_count() for row in self.rows) // 2

    @classmethod
    def trusted(cls, n: int, rows: Sequence[int]) -> "Graph":
        """Build from rows already known to be symmetric and loop-free."""
        if n > MAX_VERTICES:
            raise ParameterError(f"graphs are capped at {MAX_VERTICES} vertices, got {n}")
        G = cls.__new__(cls)
        G.__setstate__((n, tuple(rows)))
        return G

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ParameterError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u},{v}) out of bounds for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def from_networkx(cls, G: nx.Graph) -> "Graph":
        index = {node: i for i, node in enumerate(G.nodes())}
        return cls.from_edges(len(index), ((index[u], index[v]) for u, v in G.edges()))

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges())
        return G

    @property
    def edge_count(self) -> int:
        return self._edges

    def edges(self) -> List[Edge]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> List[int]:
        return [row.bit_count() for row in self.rows]

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex v renamed perm[v]."""
        if sorted(perm) != list(range(self.n)):
            raise ParameterError("relabelling must be a permutation of the vertices")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        position = {v: i for i, v in enumerate(vertices)}
        keep = bits_of(vertices)
        return Graph.from_edges(
            len(vertices),
            ((position[u], position[w]) for u in vertices for w in iter_bits(self.rows[u] & keep) if u < w),
        )

    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.n, self.edges() + [(u, v)])

    def without_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.n, [e for e in self.edges() if e != (min(u, v), max(u, v))])

    def complement(self) -> "Graph":
        full = self.vertex_mask()
        return Graph.trusted(self.n, [full & ~row & ~(1 << v) for v, row in enumerate(self.rows)])

    def isolated_vertices(self) -> List[int]:
        return [v for v, row in enumerate(self.rows) if not row]

    def strip_isolated(self) -> "Graph":
        return self.induced_subgraph([v for v, row in enumerate(self.rows) if row])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.edge_count})"

    def __getstate__(self):
        return (self.n, self.rows)

    def __setstate__(self, state):
        n, rows = state
        self.n = n
        self.rows = rows
        self._edges = sum(row.bit_count() for row in rows) // 2


# ---------------------------------------------------------------- constructors

class NamedKind(str, Enum):
    COMPLETE = "complete"
    EMPTY = "empty"
    STAR = "star"
    PATH = "path"
    CYCLE = "cycle"
    MATCHING = "matching"
    TURAN = "turan"
    COMPLETE_BIPARTITE = "complete_bipartite"


_ARITY = {
    NamedKind.COMPLETE: 1,
    NamedKind.EMPTY: 1,
    NamedKind.STAR: 1,
    NamedKind.PATH: 1,
    NamedKind.CYCLE: 1,
    NamedKind.MATCHING: 1,
    NamedKind.TURAN: 2,
    NamedKind.COMPLETE_BIPARTITE: 2,
}


def turan_part_sizes(n: int, r: int) -> List[int]:
    """Part sizes of T(n,r): the first n mod r parts take the extra vertex."""
    q, s = divmod(n, r)
    return [q + 1] * s + [q] * (r - s)


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    n = sum(sizes)
    rows = []
    start = 0
    full = (1 << n) - 1
    for size in sizes:
        block = ((1 << size) - 1) << start
        rows.extend([full & ~block] * size)
        start += size
    return Graph.trusted(n, rows)


def make_named(kind, *params: int) -> Graph:
    """
    Build a standard graph.

    Args:
        kind: a NamedKind (or its string value).
        params: one integer, or two for `turan` (n, r) and `complete_bipartite` (s, t).

    Returns:
        Graph: the named graph; T(n,r) puts the larger parts on the lowest vertex indices.
    """
    try:
        kind = NamedKind(kind)
    except ValueError:
        raise ParameterError(f"unknown graph kind {kind!r}", details={"known": [k.value for k in NamedKind]})
    if len(params) != _ARITY[kind]:
        raise ParameterError(f"{kind.value} takes {_ARITY[kind]} parameter(s), got {len(params)}")
    if any(p < 0 for p in params):
        raise ParameterError(f"parameters must be non-negative, got {params}")

    k = params[0]
    if kind is NamedKind.COMPLETE:
        return complete_multipartite([1] * k)
    if kind is NamedKind.EMPTY:
        return Graph(k, [0] * k)
    if kind is NamedKind.STAR:
        if k < 1:
            raise ParameterError("a star needs at least one vertex")
        return Graph.from_edges(k, ((0, v) for v in range(1, k)))
    if kind is NamedKind.PATH:
        return Graph.from_edges(k, ((v, v + 1) for v in range(k - 1)))
    if kind is NamedKind.CYCLE:
        if k < 3:
            raise ParameterError(f"cycles need at least 3 vertices, got C_{k}")
        return Graph.from_edges(k, ((v, (v + 1) % k) for v in range(k)))
    if kind is NamedKind.MATCHING:
        return Graph.from_edges(2 * k, ((2 * i, 2 * i + 1) for i in range(k)))
    if kind is NamedKind.TURAN:
        n, r = params
        if r < 1:
            raise ParameterError(f"T(n,r) needs r >= 1, got r={r}")
        return complete_multipartite(turan_part_sizes(n, r))
    s, t = params
    return complete_multipartite([s, t])


def join(F: Graph, H: Graph) -> Graph:
    """F ∇ H: disjoint copies plus every edge between them."""
    n = F.n + H.n
    f_mask = F.vertex_mask()
    h_mask = H.vertex_mask() << F.n
    rows = [row | h_mask for row in F.rows] + [(row << F.n) | f_mask for row in H.rows]
    return Graph.trusted(n, rows)


def disjoint_union(F: Graph, H: Graph) -> Graph:
    return Graph.trusted(F.n + H.n, list(F.rows) + [row << F.n for row in H.rows])


class SkeletonFamily(str, Enum):
    WHEEL = "wheel"
    FAN = "fan"
    BOOK = "book"
    FRIENDSHIP = "friendship"


def named_fbullet(family, k: int) -> Graph:
    """The graph F• with F = K_1 ∇ F• for the named skeleton families."""
    family = SkeletonFamily(family)
    if k < 1:
        raise ParameterError(f"family parameter must be positive, got {k}")
    if family is SkeletonFamily.WHEEL:
        if k < 2:
            raise ParameterError("wheels need k >= 2 (C_{2k} with 2k >= 4)")
        return make_named(NamedKind.CYCLE, 2 * k)
    if family is SkeletonFamily.FAN:
        return make_named(NamedKind.PATH, k + 1)
    if family is SkeletonFamily.BOOK:
        return make_named(NamedKind.STAR, k + 1)
    return make_named(NamedKind.MATCHING, k)


def named_skeleton(family, k: int) -> Graph:
    return join(make_named(NamedKind.COMPLETE, 1), named_fbullet(family, k))


# ---------------------------------------------------------------- parameters

def max_degree(G: Graph) -> int:
    return max(G.degrees(), default=0)


def matching_number(G: Graph) -> int:
    if G.edge_count == 0:
        return 0
    return len(nx.max_weight_matching(G.to_networkx(), maxcardinality=True))


def is_bipartite(G: Graph) -> bool:
    return nx.is_bipartite(G.to_networkx())


def connected_components(G: Graph) -> List[List[int]]:
    return sorted(sorted(c) for c in nx.connected_components(G.to_networkx()))


def bipartition(G: Graph) -> Tuple[List[int], List[int]]:
    """
    Colour classes (A, B) with A as small as possible.

    Each component contributes its smaller class to A; on a tie the class
    holding the component's lowest vertex goes to A.
    """
    G_nx = G.to_networkx()
    if not nx.is_bipartite(G_nx):
        raise DomainError("graph is not bipartite")
    A: List[int] = []
    B: List[int] = []
    for component in connected_components(G):
        coloring = nx.bipartite.color(G_nx.subgraph(component))
        first = [v for v in component if coloring[v] == coloring[component[0]]]
        second = [v for v in component if coloring[v] != coloring[component[0]]]
        if len(second) < len(first):
            first, second = second, first
        A.extend(first)
        B.extend(second)
    return sorted(A), sorted(B)


def independence_number(G: Graph) -> int:
    if G.n == 0:
        return 0
    _, weight = nx.max_weight_clique(G.complement().to_networkx(), weight=None)
    return weight


class _BudgetSpent(Exception):
    pass


def _min_cover(rows: Sequence[int], alive: int, limit: Optional[int]) -> Optional[int]:
    """Exact minimum vertex cover of the subgraph induced by `alive`, or None past `limit` nodes."""
    counter = [0]
    best = [alive.bit_count()]

    def solve(alive: int, size: int) -> None:
        counter[0] += 1
        if limit is not None and counter[0] > limit:
            raise _BudgetSpent
        if size >= best[0]:
            return
        # pendant vertices: their neighbour is always safe to take
        changed = True
        while changed:
            changed = False
            for v in iter_bits(alive):
                nbrs = rows[v] & alive
                if nbrs and nbrs & (nbrs - 1) == 0:
                    alive &= ~nbrs
                    size += 1
                    changed = True
                    break
        if size >= best[0]:
            return
        pick, pick_deg = -1, 0
        edges2 = 0
        for v in iter_bits(alive):
            d = (rows[v] & alive).bit_count()
            edges2 += d
            if d > pick_deg:
                pick, pick_deg = v, d
        if pick_deg == 0:
            best[0] = size
            return
        # every cover needs at least e / Δ vertices
        if size + -(-edges2 // (2 * pick_deg)) >= best[0]:
            return
        solve(alive & ~(1 << pick), size + 1)
        nbrs = rows[pick] & alive
        solve(alive & ~nbrs & ~(1 << pick), size + nbrs.bit_count())

    try:
        solve(alive, 0)
    except _BudgetSpent:
        return None
    return best[0]


def covering_number(G: Graph, budget: Optional[int] = None) -> Optional[int]:
    """
    β(G): the minimum number of vertices meeting every edge.

    Exact branch and bound. Returns None only when `budget` search nodes are spent.
    """
    return _min_cover(G.rows, G.vertex_mask(), budget)


def independent_covering_number(G: Graph) -> int:
    """
    q(G) for bipartite G.

    In a connected bipartite graph with an edge, the only independent coverings
    are the two colour classes, so q sums the smaller class over components.
    """
    G_nx = G.to_networkx()
    if not nx.is_bipartite(G_nx):
        raise DomainError("the independent covering number is defined for bipartite graphs only")
    total = 0
    for component in nx.connected_components(G_nx):
        if len(component) < 2:
            continue
        coloring = nx.bipartite.color(G_nx.subgraph(component))
        ones = sum(coloring.values())
        total += min(ones, len(component) - ones)
    return total


def _colorable(G: Graph, k: int) -> bool:
    n = G.n
    color_of = [-1] * n
    class_masks = [0] * k

    def saturation(v: int) -> int:
        return sum(1 for c in range(k) if class_masks[c] & G.rows[v])

    def place(colored: int, used: int) -> bool:
        if colored == n:
            return True
        v = max(
            (u for u in range(n) if color_of[u] < 0),
            key=lambda u: (saturation(u), G.degree(u), -u),
        )
        # colours beyond the first unused one are symmetric
        for c in range(min(used + 1, k)):
            if class_masks[c] & G.rows[v]:
                continue
            color_of[v] = c
            class_masks[c] |= 1 << v
            if place(colored + 1, max(used, c + 1)):
                return True
            class_masks[c] &= ~(1 << v)
            color_of[v] = -1
        return False

    return place(0, 0)


def chromatic_number(G: Graph) -> int:
    if G.n > CHROMATIC_LIMIT:
        raise GuardrailError(f"chromatic_number is limited to {CHROMATIC_LIMIT} vertices, got {G.n}")
    if G.n == 0:
        return 0
    if G.edge_count == 0:
        return 1
    if is_bipartite(G):
        return 2
    _, clique = nx.max_weight_clique(G.to_networkx(), weight=None)
    k = max(clique, 3)
    while not _colorable(G, k):
        k += 1
    return k


class GraphProfile:
    """Cheap invariants used to reject impossible embeddings before searching."""

    __slots__ = ("n", "edges", "degrees_desc", "bipartite", "nu", "beta")

    def __init__(self, G: Graph, cover_budget: int = 20000):
        self.n = G.n
        self.edges = G.edge_count
        self.degrees_desc = sorted(G.degrees(), reverse=True)
        self.bipartite = is_bipartite(G)
        self.nu = matching_number(G)
        self.beta = covering_number(G, budget=cover_budget)


@lru_cache(maxsize=4096)
def graph_profile(G: Graph) -> GraphProfile:
    return GraphProfile(G)


def degree_histogram(G: Graph) -> Dict[int, int]:
    histogram: Dict[int, int] = {}
    for d in G.degrees():
        histogram[d] = histogram.get(d, 0) + 1
    return histogram
