import logging

import click

from balloonlab.commands.inputs import FAMILY_CHOICE, echo_graphs, echo_json, resolve_graph, skeleton_options, summarize
from balloonlab.errors import ParameterError
from balloonlab.middleware.cli_guard import Runtime, handle_cli_errors, pass_runtime
from balloonlab.schemas import DecompositionPayload, FamilyPayload
from balloonlab.services import graph6
from balloonlab.services.ballooning import BalloonSpec, odd_balloon
from balloonlab.services.canonical import GraphFamily
from balloonlab.services.cracking import crack_family, cracking_family, decomposition_family_bruteforce
from balloonlab.services.graph import Graph, independent_covering_number, is_bipartite

logger = logging.getLogger(__name__)


def _parse_vertex_set(text: str):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise ParameterError(f"cannot read vertex set {text!r}; expected e.g. 0,2,5")


def _member_summaries(family: GraphFamily):
    return [summarize(G, independent_covering_number(G) if is_bipartite(G) else None) for G in family]


def _echo_family(family: GraphFamily, skeleton: Graph, cracked, as_json: bool) -> None:
    if not as_json:
        echo_graphs(family)
        return
    members = _member_summaries(family)
    q = min((m.q for m in members if m.q is not None), default=None)
    echo_json(FamilyPayload(skeleton=graph6.encode(skeleton), cracked=cracked, members=members, q=q))


@click.command("crack")
@handle_cli_errors
@skeleton_options
@click.option("--U", "cracked", required=True, help="Independent vertex set to crack, e.g. 0,2.")
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON family report instead of graph6 lines.")
def crack_command(skeleton, cracked, as_json):
    """Emit C(F, U) as graph6 lines."""
    U = _parse_vertex_set(cracked)
    _echo_family(crack_family(skeleton, U), skeleton, sorted(set(U)), as_json)


@click.command("crack-all")
@handle_cli_errors
@skeleton_options
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON family report instead of graph6 lines.")
def crack_all_command(skeleton, as_json):
    """Emit the cracking family C(F) as graph6 lines."""
    _echo_family(cracking_family(skeleton), skeleton, None, as_json)


@click.command("decompose")
@click.option("--graph", "graph_text", help="Skeleton F as graph6; the target is F° with --length.")
@click.option("--family", "family_name", type=FAMILY_CHOICE, help="Named skeleton K_1 ∇ F•.")
@click.option("--k", "family_k", type=int, help="Parameter of --family.")
@click.option("--length", type=int, default=5, show_default=True, help="Uniform cycle length of F°.")
@click.option("--target", "target_text", help="Target F° directly as graph6 (no edge-count hint).")
@click.option("--t-max", type=int, help="Largest t tried (default |F°|).")
@click.option("--size-cap", type=int, default=6, show_default=True, help="Largest candidate order.")
@click.option("--budget", type=int, help="Search nodes per embedding test.")
@click.option("--edge-hint/--no-edge-hint", default=True, show_default=True,
              help="Only test candidates with e(F) edges when the skeleton is known.")
@pass_runtime
@handle_cli_errors
def decompose_command(runtime: Runtime, graph_text, family_name, family_k, length, target_text, t_max, size_cap,
                      budget, edge_hint):
    """Brute-force the decomposition family M(F°) for r = 2 and report it as JSON."""
    hint = None
    if target_text is not None:
        if graph_text or family_name:
            raise ParameterError("--target cannot be combined with a skeleton")
        target = graph6.decode(target_text)
    else:
        skeleton = resolve_graph(graph_text, family_name, family_k, bullet=False)
        target = odd_balloon(BalloonSpec.uniform(skeleton, length)).graph
        hint = skeleton.edge_count if edge_hint else None

    result = decomposition_family_bruteforce(target, r=2, t_max=t_max, size_cap=size_cap,
                                             budget=runtime.budget_or(budget), edge_count_hint=hint,
                                             threads=runtime.threads)
    members = _member_summaries(result.family)
    echo_json(DecompositionPayload(
        status=result.status,
        r=2,
        t_max=t_max if t_max is not None else target.n,
        size_cap=size_cap,
        members=members,
        minimal_t={form.hex(): t for form, t in result.minimal_t.items()},
        at_size_cap=[form.hex() for form in result.at_size_cap],
        candidates_tested=result.candidates_tested,
    ))
    if result.at_size_cap:
        logger.warning(f"{len(result.at_size_cap)} member(s) have exactly {size_cap} vertices; raise --size-cap to rule out larger members")
