"""
Exhaustive generation of graphs up to isomorphism under hereditary constraints.

Level k+1 is built from level k by adding vertex k with every admissible
neighbourhood and keeping one graph per nauty certificate. All supported
constraints (forbidden subgraphs, ν ≤ a, Δ ≤ b) are inherited by induced
subgraphs, so every graph satisfying them is reached from a parent that does.
"""
import itertools
import logging
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from balloonlab.services.canonical import canonical_form
from balloonlab.services.graph import Graph, bits_of, iter_bits, matching_number, max_degree
from balloonlab.services.subgraph import contains_subgraph

logger = logging.getLogger(__name__)

# fixed so the merge order, and with it every result, ignores the worker count
CHUNK_SIZE = 32


@dataclass(frozen=True)
class GraphConstraint:
    forbidden: Tuple[Graph, ...] = ()
    max_nu: Optional[int] = None
    max_delta: Optional[int] = None

    def admits(self, G: Graph) -> bool:
        """Full check, independent of how G was generated."""
        if self.max_delta is not None and max_degree(G) > self.max_delta:
            return False
        if self.max_nu is not None and matching_number(G) > self.max_nu:
            return False
        return not any(contains_subgraph(G, F) for F in self.forbidden)

    @property
    def grows_with_isolated_vertices(self) -> bool:
        """Adding an isolated vertex keeps every admitted graph admitted."""
        return all(not F.isolated_vertices() for F in self.forbidden)


@dataclass
class GenerationRun:
    levels: Dict[int, List[Graph]]
    level_optima: List[int]
    completed_n: int
    examined: int
    pruned_last_level: bool = False

    @property
    def best_graph(self) -> Graph:
        return max(self.levels[self.completed_n], key=lambda G: G.edge_count)


@dataclass
class _Task:
    parents: List[Tuple[Graph, Optional[int]]]
    constraint: GraphConstraint
    floor: Optional[int] = None
    prune: bool = False


def _free_vertices(G: Graph, nu: int) -> int:
    """Vertices missed by some maximum matching, as a mask."""
    mask = 0
    for x in range(G.n):
        rest = [v for v in range(G.n) if v != x]
        if matching_number(G.induced_subgraph(rest)) == nu:
            mask |= 1 << x
    return mask


def _with_vertex(G: Graph, N: int) -> Graph:
    k = G.n
    rows = [row | (1 << k) if N >> v & 1 else row for v, row in enumerate(G.rows)]
    rows.append(N)
    return Graph.trusted(k + 1, rows)


def _violates(child: Graph, parent_n: int, forbidden: Sequence[Graph]) -> bool:
    for F in forbidden:
        if F.n > child.n:
            continue
        if F.isolated_vertices():
            if contains_subgraph(child, F, prefilter=False):
                return True
        elif contains_subgraph(child, F, anchor=parent_n, prefilter=False):
            return True
    return False


def _extend_chunk(task: _Task) -> Tuple[List[Tuple[bytes, Graph, Optional[int]]], int]:
    constraint = task.constraint
    children = []
    examined = 0
    floor = task.floor
    for parent, nu in task.parents:
        k = parent.n
        allowed = (1 << k) - 1
        max_size = k
        if constraint.max_delta is not None:
            allowed &= bits_of(v for v in range(k) if parent.degree(v) < constraint.max_delta)
            max_size = min(max_size, constraint.max_delta)
        free = 0
        if constraint.max_nu is not None:
            free = _free_vertices(parent, nu)
            if nu >= constraint.max_nu:
                allowed &= ~free
        choices = list(iter_bits(allowed))
        max_size = min(max_size, len(choices))
        for size in range(max_size, -1, -1):
            if floor is not None and parent.edge_count + size < floor:
                break
            for combo in itertools.combinations(choices, size):
                examined += 1
                N = bits_of(combo)
                child = _with_vertex(parent, N)
                if _violates(child, k, constraint.forbidden):
                    continue
                child_nu = None
                if constraint.max_nu is not None:
                    child_nu = nu + 1 if N & free else nu
                children.append((canonical_form(child), child, child_nu))
                if task.prune and (floor is None or child.edge_count > floor):
                    floor = child.edge_count
    return children, examined


def _chunks(items: Sequence, size: int) -> Iterable[List]:
    for start in range(0, len(items), size):
        yield list(items[start:start + size])


def run_generation(max_n: int, constraint: GraphConstraint, threads: int = 1, budget: Optional[int] = None,
                   prune_last_level: bool = False, progress: bool = False) -> GenerationRun:
    """
    Generate all admitted graphs on 0..max_n vertices, one per isomorphism class.

    Args:
        max_n: largest order generated.
        constraint: hereditary constraint every generated graph satisfies.
        threads: worker processes; results do not depend on it.
        budget: stop after the first level at which this many candidate
            neighbourhoods have been examined in total.
        prune_last_level: keep only the edge-maximal graphs of the last level.
        progress: show a tqdm bar per level.

    Returns:
        GenerationRun: levels up to `completed_n` (equal to max_n unless the budget stopped it).
    """
    nu0 = 0 if constraint.max_nu is not None else None
    levels: Dict[int, List[Graph]] = {0: [Graph(0, [])]}
    records = [(levels[0][0], nu0)]
    optima = [0]
    examined = 0
    completed = 0
    pool = Pool(processes=threads) if threads > 1 else None
    try:
        for k in range(max_n):
            if budget is not None and examined > budget:
                logger.warning(f"Generation budget {budget} spent after level {completed}")
                break
            last = k + 1 == max_n
            prune = last and prune_last_level
            floor = optima[-1] if prune and constraint.grows_with_isolated_vertices else None
            tasks = [_Task(chunk, constraint, floor, prune) for chunk in _chunks(records, CHUNK_SIZE)]
            outputs = pool.imap(_extend_chunk, tasks) if pool else map(_extend_chunk, tasks)
            if progress:
                outputs = tqdm(outputs, total=len(tasks), desc=f"n={k + 1}")
            merged: Dict[bytes, Tuple[Graph, Optional[int]]] = {}
            for children, count in outputs:
                examined += count
                for form, child, child_nu in children:
                    merged.setdefault(form, (child, child_nu))
            ordered = sorted(merged.items())
            if not ordered:
                break
            best = max(child.edge_count for _, (child, _) in ordered)
            if prune:
                ordered = [item for item in ordered if item[1][0].edge_count == best]
            records = [record for _, record in ordered]
            levels[k + 1] = [child for child, _ in records]
            optima.append(best)
            completed = k + 1
            logger.info(f"Level n={k + 1}: {len(records)} graphs, max edges {best}")
    finally:
        if pool:
            pool.close()
            pool.join()
    return GenerationRun(levels, optima, completed, examined, prune_last_level and completed == max_n)


def generate_graphs(max_n: int, constraint: Optional[GraphConstraint] = None, threads: int = 1) -> Dict[int, List[Graph]]:
    """All admitted graphs by order, 0..max_n vertices."""
    return run_generation(max_n, constraint or GraphConstraint(), threads=threads).levels
