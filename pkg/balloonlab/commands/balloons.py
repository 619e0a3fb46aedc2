import logging
from pathlib import Path

import click

from balloonlab.commands.inputs import FAMILY_CHOICE, echo_json, resolve_graph
from balloonlab.errors import ParameterError
from balloonlab.middleware.cli_guard import handle_cli_errors
from balloonlab.services import graph6
from balloonlab.services.ballooning import BalloonSpec, balloon_payload, odd_balloon, parse_spec

logger = logging.getLogger(__name__)


@click.command("balloon")
@click.option("--skeleton", "skeleton_text", help="Skeleton F as graph6.")
@click.option("--family", "family_name", type=FAMILY_CHOICE, help="Named skeleton K_1 ∇ F•.")
@click.option("--k", "family_k", type=int, help="Parameter of --family.")
@click.option("--length", type=int, help="Uniform odd cycle length for every edge.")
@click.option("--spec", "spec_file", type=click.Path(exists=True, dir_okay=False),
              help="Balloon spec file, text or JSON.")
@click.option("--json", "as_json", is_flag=True, help="Emit the cycle record as JSON.")
@click.option("--dot", is_flag=True, help="Emit Graphviz DOT with the skeleton vertices highlighted.")
@handle_cli_errors
def balloon_command(skeleton_text, family_name, family_k, length, spec_file, as_json, dot):
    """Odd-balloon a skeleton: every edge uv becomes an odd cycle through uv."""
    if spec_file:
        if skeleton_text or family_name or length:
            raise ParameterError("--spec cannot be combined with --skeleton, --family or --length")
        spec = parse_spec(Path(spec_file).read_text(encoding="utf-8"))
    else:
        if length is None:
            raise ParameterError("give --length or a --spec file")
        spec = BalloonSpec.uniform(resolve_graph(skeleton_text, family_name, family_k, bullet=False), length)
    if not spec.long_cycle_regime:
        logger.warning("Some cycle has length 3; predictions assume every cycle has length at least 5")

    result = odd_balloon(spec)
    if as_json:
        echo_json(balloon_payload(spec, result))
    else:
        click.echo(graph6.encode(result.graph))
    if dot:
        click.echo(graph6.to_dot(result.graph, name="balloon", highlight=range(spec.skeleton.n)), nl=False)
