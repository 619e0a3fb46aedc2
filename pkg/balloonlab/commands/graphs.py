import logging

import click

from balloonlab.commands.inputs import FAMILY_CHOICE
from balloonlab.errors import ParameterError
from balloonlab.middleware.cli_guard import handle_cli_errors
from balloonlab.services import graph6
from balloonlab.services.graph import NamedKind, SkeletonFamily, make_named, named_fbullet, named_skeleton

logger = logging.getLogger(__name__)

KIND_CHOICE = click.Choice([k.value for k in NamedKind] + [f.value for f in SkeletonFamily])


@click.command("gen")
@click.argument("kind", type=KIND_CHOICE)
@click.argument("params", nargs=-1, type=int)
@click.option("--fbullet", is_flag=True, help="For wheel/fan/book/friendship emit F• instead of K_1 ∇ F•.")
@click.option("--dot", is_flag=True, help="Emit Graphviz DOT after the graph6 line.")
@handle_cli_errors
def gen_command(kind, params, fbullet, dot):
    """Emit a named graph as graph6, e.g. `gen turan 7 3` or `gen wheel 2`."""
    if kind in {f.value for f in SkeletonFamily}:
        if len(params) != 1:
            raise ParameterError(f"{kind} takes one parameter k, got {len(params)}")
        G = named_fbullet(kind, params[0]) if fbullet else named_skeleton(kind, params[0])
    else:
        if fbullet:
            raise ParameterError("--fbullet applies to wheel, fan, book and friendship only")
        G = make_named(kind, *params)
    logger.debug(f"Generated {kind}{list(params)}: {G!r}")
    click.echo(graph6.encode(G))
    if dot:
        click.echo(graph6.to_dot(G, name=kind), nl=False)
