import click

from balloonlab.commands.inputs import echo_json, read_family_file
from balloonlab.middleware.cli_guard import Runtime, handle_cli_errors, pass_runtime
from balloonlab.services import graph6
from balloonlab.services.canonical import GraphFamily
from balloonlab.services.constructions import Verdict, certify_free


@click.command("check-free")
@click.option("--host", "host_text", required=True, help="Host graph as graph6.")
@click.option("--family", "family_file", required=True, type=click.Path(exists=True, dir_okay=False),
              help="File of forbidden graphs, one graph6 per line.")
@click.option("--budget", type=int, help="Search nodes per family member.")
@click.option("--no-shortcut", is_flag=True, help="Disable the bipartite parity shortcut.")
@click.option("--dot", is_flag=True, help="Emit DOT of the host with a found witness highlighted.")
@pass_runtime
@handle_cli_errors
def check_free_command(runtime: Runtime, host_text, family_file, budget, no_shortcut, dot):
    """Certify that a host contains no member of a family; JSON certificate on stdout."""
    host = graph6.decode(host_text)
    family = GraphFamily(read_family_file(family_file))
    certificate = certify_free(host, family, budget=runtime.budget_or(budget), threads=runtime.threads,
                               use_shortcut=not no_shortcut)
    echo_json(certificate.to_payload())
    if dot:
        highlight = certificate.witness if certificate.verdict is Verdict.CONTAINS else None
        click.echo(graph6.to_dot(host, name="host", highlight=highlight), nl=False)
