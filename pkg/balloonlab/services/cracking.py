"""
Cracking and decomposition families.

Cracking an independent vertex set U of F replaces each u in U of degree d
by d new vertices u_1..u_d, one per incident edge u v_i. A Type I edge
becomes u_i v_i; a Type II edge becomes u_i w_i for a further new vertex w_i.
"""
import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from balloonlab.errors import DomainError, ParameterError
from balloonlab.services.canonical import CanonicalForm, GraphFamily, canonical_form, subset_orbit_representatives
from balloonlab.services.generation import GraphConstraint, generate_graphs
from balloonlab.services.graph import (
    Edge,
    Graph,
    bipartition,
    bits_of,
    chromatic_number,
    connected_components,
    disjoint_union,
    independent_covering_number,
    is_bipartite,
    iter_bits,
    join,
    make_named,
)
from balloonlab.services.subgraph import SearchStatus, contains_subgraph, find_embedding

logger = logging.getLogger(__name__)


class EdgeType(str, Enum):
    TYPE_I = "I"
    TYPE_II = "II"


def _edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def incident_edges(F: Graph, U: Iterable[int]) -> List[Edge]:
    return sorted({_edge_key(u, v) for u in U for v in F.neighbors(u)})


def is_independent(F: Graph, U: Iterable[int]) -> bool:
    mask = bits_of(U)
    return all(not F.rows[u] & mask for u in iter_bits(mask))


@dataclass(frozen=True)
class CrackAssignment:
    U: Tuple[int, ...]
    edge_types: Mapping[Edge, EdgeType] = field(default_factory=dict)

    def validate(self, F: Graph) -> None:
        if any(not 0 <= u < F.n for u in self.U):
            raise ParameterError(f"cracked vertices {self.U} out of range for n={F.n}")
        if not is_independent(F, self.U):
            raise ParameterError(f"cracked set {sorted(self.U)} is not independent")
        expected = set(incident_edges(F, self.U))
        given = {_edge_key(u, v) for u, v in self.edge_types}
        if given != expected:
            raise ParameterError(
                "edge types must label exactly the edges at the cracked set",
                details={"missing": sorted(expected - given), "extra": sorted(given - expected)},
            )

    def type_of(self, u: int, v: int) -> EdgeType:
        return EdgeType(self.edge_types[_edge_key(u, v)])

    @classmethod
    def uniform(cls, F: Graph, U: Iterable[int], edge_type: EdgeType) -> "CrackAssignment":
        U = tuple(sorted(U))
        return cls(U, {e: edge_type for e in incident_edges(F, U)})


def crack(F: Graph, assignment: CrackAssignment) -> Graph:
    """
    Apply a crack assignment.

    Vertices outside U keep their relative order first; then, for each u in U
    and each neighbour in increasing order, u_i is appended and, for a Type II
    edge, its partner w_i right after it. e(result) = e(F).
    """
    assignment.validate(F)
    cracked = set(assignment.U)
    index = {}
    for v in range(F.n):
        if v not in cracked:
            index[v] = len(index)
    n = len(index)
    edges = [(index[u], index[v]) for u, v in F.edges() if u not in cracked and v not in cracked]
    for u in sorted(cracked):
        for v in F.neighbors(u):
            u_i = n
            n += 1
            if assignment.type_of(u, v) is EdgeType.TYPE_I:
                edges.append((u_i, index[v]))
            else:
                edges.append((u_i, n))
                n += 1
    return Graph.from_edges(n, edges)


def _assignments(F: Graph, U: Sequence[int]) -> Iterable[CrackAssignment]:
    edges = incident_edges(F, U)
    for types in itertools.product((EdgeType.TYPE_I, EdgeType.TYPE_II), repeat=len(edges)):
        yield CrackAssignment(tuple(U), dict(zip(edges, types)))


def crack_family(F: Graph, U: Iterable[int]) -> GraphFamily:
    """C(F, U): every Type I / Type II labelling of the edges at U, up to isomorphism."""
    U = tuple(sorted(set(U)))
    if any(not 0 <= u < F.n for u in U):
        raise ParameterError(f"cracked vertices {list(U)} out of range for n={F.n}")
    if not is_independent(F, U):
        raise ParameterError(f"cracked set {list(U)} is not independent")
    return GraphFamily(crack(F, a) for a in _assignments(F, U))


def independent_sets(F: Graph, up_to_symmetry: bool = False) -> List[Tuple[int, ...]]:
    """All independent sets of F (the empty set included), optionally one per Aut(F)-orbit."""
    found: List[Tuple[int, ...]] = []

    def extend(chosen: List[int], allowed: int) -> None:
        found.append(tuple(chosen))
        for v in iter_bits(allowed):
            extend(chosen + [v], allowed & ~F.rows[v] & ~((1 << (v + 1)) - 1))

    extend([], F.vertex_mask())
    if up_to_symmetry:
        return subset_orbit_representatives(F, found)
    return sorted(found, key=lambda s: (len(s), s))


def cracking_family(F: Graph) -> GraphFamily:
    """C(F): the union of C(F, U) over all independent sets U, U empty included."""
    graphs = []
    for U in independent_sets(F, up_to_symmetry=True):
        graphs.extend(crack(F, a) for a in _assignments(F, U))
    family = GraphFamily(graphs)
    logger.info(f"Cracking family of {F!r}: {len(family)} members from {len(graphs)} crackings")
    return family


# ---------------------------------------------------------------- F• classification

class ComponentKind(str, Enum):
    EVEN_CYCLE = "even_cycle"
    EDGE = "edge"
    TREE = "tree"


class FbulletCase(str, Enum):
    ALL_EVEN_CYCLES = "AllEvenCycles"
    ALL_SINGLE_EDGES = "AllSingleEdges"
    MIXED_TREES = "MixedTrees"


def classify_fbullet(F_bullet: Graph) -> List[ComponentKind]:
    """
    Kinds of the components of F•, in component order.

    Raises:
        DomainError: a component is neither a non-trivial tree nor an even cycle.
    """
    if F_bullet.n == 0:
        raise DomainError("F• must have at least one component")
    kinds = []
    for component in connected_components(F_bullet):
        sub = F_bullet.induced_subgraph(component)
        n, e = sub.n, sub.edge_count
        if n == 2 and e == 1:
            kinds.append(ComponentKind.EDGE)
        elif n >= 3 and e == n - 1:
            kinds.append(ComponentKind.TREE)
        elif n >= 4 and n % 2 == 0 and e == n and all(d == 2 for d in sub.degrees()):
            kinds.append(ComponentKind.EVEN_CYCLE)
        else:
            raise DomainError(
                f"component {component} of F• is neither a non-trivial tree nor an even cycle",
                details={"vertices": n, "edges": e},
            )
    return kinds


def fbullet_case(F_bullet: Graph) -> FbulletCase:
    kinds = set(classify_fbullet(F_bullet))
    if kinds == {ComponentKind.EVEN_CYCLE}:
        return FbulletCase.ALL_EVEN_CYCLES
    if kinds == {ComponentKind.EDGE}:
        return FbulletCase.ALL_SINGLE_EDGES
    return FbulletCase.MIXED_TREES


def fixture_J(F_bullet: Graph, which: int) -> Graph:
    """
    The crackings J_1..J_4 of F = K_1 ∇ F• (apex w = vertex 0).

    With colour classes A (smaller per component) and B of F•:
    J_1 cracks B with all edges Type I; J_2 cracks B with all edges Type II;
    J_3 cracks B with w-B edges Type I and A-B edges Type II;
    J_4 cracks w with w-A edges Type I and w-B edges Type II.
    """
    if which not in (1, 2, 3, 4):
        raise ParameterError(f"fixture index must be 1..4, got {which}")
    classify_fbullet(F_bullet)
    F = join(make_named("complete", 1), F_bullet)
    A, B = bipartition(F_bullet)
    A = {a + 1 for a in A}
    B = [b + 1 for b in B]
    w = 0
    if which == 4:
        U = (w,)
        types = {_edge_key(w, v): EdgeType.TYPE_I if v in A else EdgeType.TYPE_II for v in F.neighbors(w)}
    else:
        U = tuple(B)
        types = {}
        for edge in incident_edges(F, U):
            if which == 1:
                types[edge] = EdgeType.TYPE_I
            elif which == 2:
                types[edge] = EdgeType.TYPE_II
            else:
                types[edge] = EdgeType.TYPE_I if w in edge else EdgeType.TYPE_II
    return crack(F, CrackAssignment(U, types))


def q_of_family(family: GraphFamily) -> int:
    """Minimum independent covering number over the bipartite members."""
    values = [independent_covering_number(G) for G in family if is_bipartite(G)]
    if not values:
        raise DomainError("family has no bipartite member")
    return min(values)


# ---------------------------------------------------------------- decomposition family

@dataclass
class DecompositionResult:
    family: GraphFamily
    minimal_t: Dict[CanonicalForm, int]
    at_size_cap: List[CanonicalForm]
    undecided: List[Graph]
    candidates_tested: int
    nodes: int

    @property
    def status(self) -> str:
        return "indeterminate" if self.undecided else "complete"


def decomposition_host(M: Graph, t: int, r: int) -> Graph:
    """(M ∪ E_t) ∇ T_{(r-1)t, r-1}."""
    return join(disjoint_union(M, make_named("empty", t)), make_named("turan", (r - 1) * t, r - 1))


class _Undecided(Exception):
    pass


def decomposition_family_bruteforce(Fo: Graph, r: int = 2, t_max: Optional[int] = None, size_cap: int = 6,
                                    budget: Optional[int] = None, edge_count_hint: Optional[int] = None,
                                    threads: int = 1) -> DecompositionResult:
    """
    The minimal graphs M (no isolated vertices, at most `size_cap` vertices)
    with Fo ⊆ (M ∪ E_t) ∇ T_{(r-1)t, r-1} for some t ≤ t_max.

    Candidates are scanned by increasing edge count and any candidate holding
    an already accepted member is skipped. The property is monotone in M and in t,
    so it is tested at t_max first and an accepted candidate is then scanned for
    its least t. With `edge_count_hint`, only candidates of that size are tested
    and minimality is checked directly on the one-edge deletions.

    Args:
        Fo: target graph with χ(Fo) = r + 1.
        r: number of parts minus one.
        t_max: largest t tried (default |Fo|).
        size_cap: largest candidate order.
        budget: search nodes per embedding test; exhausted tests leave the
            candidate undecided and the result indeterminate.
        edge_count_hint: restrict candidates to this many edges.
        threads: worker processes for candidate generation.

    Returns:
        DecompositionResult
    """
    if r < 2:
        raise ParameterError(f"decomposition families need r >= 2, got {r}")
    if size_cap < 1:
        raise ParameterError(f"size_cap must be positive, got {size_cap}")
    t_max = Fo.n if t_max is None else t_max
    if t_max < 1:
        raise ParameterError(f"t_max must be positive, got {t_max}")
    chi = chromatic_number(Fo)
    if chi != r + 1:
        raise DomainError(f"decomposition family for r={r} needs χ(Fo) = {r + 1}, got {chi}")

    nodes = [0]

    def embeds(M: Graph, t: int) -> bool:
        result = find_embedding(decomposition_host(M, t, r), Fo, budget=budget)
        nodes[0] += result.nodes
        if result.status is SearchStatus.EXHAUSTED:
            raise _Undecided
        return result.found

    candidates = []
    for level in generate_graphs(size_cap, GraphConstraint(), threads=threads).values():
        candidates.extend(G for G in level if G.n >= 2 and not G.isolated_vertices())
    if edge_count_hint is not None:
        candidates = [G for G in candidates if G.edge_count == edge_count_hint]
    candidates.sort(key=lambda G: (G.edge_count, G.n, canonical_form(G)))

    members: List[Graph] = []
    minimal_t: Dict[CanonicalForm, int] = {}
    undecided: List[Graph] = []
    tested = 0
    for M in candidates:
        if any(contains_subgraph(M, found) for found in members):
            continue
        tested += 1
        try:
            if not embeds(M, t_max):
                continue
            if edge_count_hint is not None and not _minimal(M, embeds, t_max):
                continue
            least = next(t for t in range(1, t_max + 1) if t == t_max or embeds(M, t))
        except _Undecided:
            logger.warning(f"Decomposition candidate {M!r} undecided within budget {budget}")
            undecided.append(M)
            continue
        members.append(M)
        minimal_t[canonical_form(M)] = least
        logger.info(f"Decomposition member {M!r} found (t={least})")

    family = GraphFamily(members)
    at_cap = [form for form, G in family.items() if G.n == size_cap]
    return DecompositionResult(family, minimal_t, at_cap, undecided, tested, nodes[0])


def _minimal(M: Graph, embeds, t_max: int) -> bool:
    for u, v in M.edges():
        smaller = M.without_edge(u, v).strip_isolated()
        if smaller.n and embeds(smaller, t_max):
            return False
    return True
