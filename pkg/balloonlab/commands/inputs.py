"""Option groups and readers shared by the command modules."""
import functools
from typing import List, Optional

import click
from pydantic import BaseModel

from balloonlab.errors import ParameterError
from balloonlab.schemas import GraphSummary
from balloonlab.services import graph6
from balloonlab.services.canonical import canonical_form
from balloonlab.services.graph import Graph, SkeletonFamily, is_bipartite, named_fbullet, named_skeleton

FAMILY_CHOICE = click.Choice([f.value for f in SkeletonFamily])


def skeleton_options(f):
    """Adds --graph / --family / --k for commands that take a skeleton F."""
    @click.option("--graph", "graph_text", help="Skeleton F as graph6.")
    @click.option("--family", "family_name", type=FAMILY_CHOICE, help="Named skeleton K_1 ∇ F•.")
    @click.option("--k", "family_k", type=int, help="Parameter of --family.")
    @functools.wraps(f)
    def wrapper(*args, graph_text=None, family_name=None, family_k=None, **kwargs):
        kwargs["skeleton"] = resolve_graph(graph_text, family_name, family_k, bullet=False)
        return f(*args, **kwargs)

    return wrapper


def resolve_graph(graph_text: Optional[str], family_name: Optional[str], family_k: Optional[int],
                  bullet: bool) -> Graph:
    """One graph from either a graph6 string or a named family with its k."""
    if (graph_text is None) == (family_name is None):
        raise ParameterError("give exactly one of a graph6 string or --family")
    if graph_text is not None:
        return graph6.decode(graph_text)
    if family_k is None:
        raise ParameterError(f"--family {family_name} needs --k")
    return named_fbullet(family_name, family_k) if bullet else named_skeleton(family_name, family_k)


def read_family_file(path: str) -> List[Graph]:
    graphs = graph6.read_graph6_file(path)
    if not graphs:
        raise ParameterError(f"no graphs in {path}")
    return graphs


def summarize(G: Graph, q: Optional[int] = None) -> GraphSummary:
    return GraphSummary(
        graph6=graph6.encode(G),
        canonical_form=canonical_form(G).hex(),
        vertices=G.n,
        edges=G.edge_count,
        bipartite=is_bipartite(G),
        q=q,
    )


def echo_json(payload: BaseModel) -> None:
    click.echo(payload.model_dump_json(indent=2))


def echo_graphs(graphs) -> None:
    click.echo(graph6.encode_lines(graphs), nl=False)
