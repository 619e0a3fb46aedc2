"""
Odd-ballooning: every skeleton edge uv becomes an odd cycle through u and v
in which uv stays an edge; the other vertices of each cycle are new.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Tuple

from pydantic import ValidationError

from balloonlab.errors import ParameterError, SpecFormatError
from balloonlab.schemas import BalloonPayload, BalloonSpecPayload, EdgeLength
from balloonlab.services import graph6
from balloonlab.services.graph import Edge, Graph

logger = logging.getLogger(__name__)

LONG_CYCLE_MIN = 5


def _edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class BalloonSpec:
    skeleton: Graph
    lengths: Mapping[Edge, int]

    def __post_init__(self):
        normalized = {_edge_key(u, v): length for (u, v), length in self.lengths.items()}
        edges = set(self.skeleton.edges())
        missing = sorted(edges - set(normalized))
        extra = sorted(set(normalized) - edges)
        if missing:
            raise ParameterError(f"no cycle length given for skeleton edges {missing}")
        if extra:
            raise ParameterError(f"lengths given for non-edges {extra}")
        for edge, length in normalized.items():
            if length < 3 or length % 2 == 0:
                raise ParameterError(f"cycle length for edge {edge} must be odd and at least 3, got {length}")
        object.__setattr__(self, "lengths", dict(sorted(normalized.items())))

    @classmethod
    def uniform(cls, skeleton: Graph, length: int) -> "BalloonSpec":
        return cls(skeleton, {edge: length for edge in skeleton.edges()})

    @property
    def long_cycle_regime(self) -> bool:
        """All cycles have length at least five."""
        return all(length >= LONG_CYCLE_MIN for length in self.lengths.values())


@dataclass(frozen=True)
class BalloonResult:
    graph: Graph
    cycles: Dict[Edge, List[int]] = field(default_factory=dict)

    def fresh_vertices(self, edge: Edge) -> List[int]:
        return self.cycles[_edge_key(*edge)][1:-1]


def balloon_sizes(spec: BalloonSpec) -> Tuple[int, int]:
    lengths = spec.lengths.values()
    return spec.skeleton.n + sum(length - 2 for length in lengths), sum(lengths)


def odd_balloon(spec: BalloonSpec) -> BalloonResult:
    """
    Build F° from a spec.

    Returns:
        BalloonResult: the graph, plus for each skeleton edge (u, v) the cycle
        as a vertex list [u, fresh..., v]. Fresh vertices are numbered after
        the skeleton's, edge by edge in sorted edge order.
    """
    skeleton = spec.skeleton
    next_vertex = skeleton.n
    edges = list(skeleton.edges())
    cycles: Dict[Edge, List[int]] = {}
    for (u, v), length in spec.lengths.items():
        fresh = list(range(next_vertex, next_vertex + length - 2))
        next_vertex += length - 2
        path = [u] + fresh + [v]
        edges.extend(zip(path, path[1:]))
        cycles[(u, v)] = path
    G = Graph.from_edges(next_vertex, edges)
    logger.debug(f"Ballooned {skeleton!r} into {G!r}")
    return BalloonResult(G, cycles)


# ---------------------------------------------------------------- serialization

def parse_spec_text(text: str) -> BalloonSpec:
    """
    Parse "graph6 ; edge u,v = l ; ... ; all = l".

    `all = l` sets the length of every edge not listed explicitly.
    """
    parts = [p.strip() for p in text.strip().split(";") if p.strip()]
    if not parts:
        raise SpecFormatError("empty balloon spec")
    skeleton = graph6.decode(parts[0])
    lengths: Dict[Edge, int] = {}
    default = None
    for item in parts[1:]:
        lhs, sep, rhs = item.partition("=")
        if not sep:
            raise SpecFormatError(f"expected '=' in spec item {item!r}")
        try:
            length = int(rhs.strip())
            lhs = lhs.strip()
            if lhs == "all":
                default = length
                continue
            if not lhs.startswith("edge"):
                raise SpecFormatError(f"unknown spec item {item!r}")
            u, v = (int(x) for x in lhs[len("edge"):].split(","))
        except ValueError:
            raise SpecFormatError(f"cannot read spec item {item!r}")
        lengths[_edge_key(u, v)] = length
    return _with_default(skeleton, lengths, default)


def parse_spec_json(text: str) -> BalloonSpec:
    try:
        payload = BalloonSpecPayload.model_validate_json(text)
    except ValidationError as e:
        raise SpecFormatError(f"invalid balloon spec JSON: {e.errors()[0]['msg']}", details={"errors": len(e.errors())})
    skeleton = graph6.decode(payload.skeleton)
    lengths = {_edge_key(item.u, item.v): item.length for item in payload.lengths}
    return _with_default(skeleton, lengths, payload.default_length)


def parse_spec(text: str) -> BalloonSpec:
    return parse_spec_json(text) if text.lstrip().startswith("{") else parse_spec_text(text)


def _with_default(skeleton: Graph, lengths: Dict[Edge, int], default) -> BalloonSpec:
    if default is not None:
        for edge in skeleton.edges():
            lengths.setdefault(edge, default)
    return BalloonSpec(skeleton, lengths)


def format_spec_text(spec: BalloonSpec) -> str:
    items = [graph6.encode(spec.skeleton)]
    items += [f"edge {u},{v} = {length}" for (u, v), length in spec.lengths.items()]
    return " ; ".join(items)


def format_spec_json(spec: BalloonSpec) -> str:
    payload = BalloonSpecPayload(
        skeleton=graph6.encode(spec.skeleton),
        lengths=[EdgeLength(u=u, v=v, length=length) for (u, v), length in spec.lengths.items()],
    )
    return payload.model_dump_json()


def balloon_payload(spec: BalloonSpec, result: BalloonResult) -> BalloonPayload:
    return BalloonPayload(
        graph6=graph6.encode(result.graph),
        vertices=result.graph.n,
        edges=result.graph.edge_count,
        long_cycle_regime=spec.long_cycle_regime,
        cycles=[{"edge": list(edge), "cycle": path} for edge, path in result.cycles.items()],
    )

