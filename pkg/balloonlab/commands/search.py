import click

from balloonlab.commands.inputs import echo_graphs, echo_json, read_family_file
from balloonlab.errors import ParameterError
from balloonlab.middleware.cli_guard import Runtime, handle_cli_errors, pass_runtime
from balloonlab.services.extremal_search import SearchJob, exact_ex, f_oracle, forbid


@click.command("search-ex")
@click.option("--n", "n", type=int, required=True)
@click.option("--forbid", "forbid_file", required=True, type=click.Path(exists=True, dir_okay=False),
              help="File of forbidden graphs, one graph6 per line.")
@click.option("--witnesses", is_flag=True, help="Emit the extremal graphs as graph6 lines after the JSON.")
@click.option("--allow-large", is_flag=True, help="I understand: allow exhaustive search beyond n = 10.")
@click.option("--budget", type=int, help="Generation budget (graphs examined).")
@pass_runtime
@handle_cli_errors
def search_ex_command(runtime: Runtime, n, forbid_file, witnesses, allow_large, budget):
    """Exact ex(n, family) by exhaustive generation."""
    job = SearchJob(n, forbid(*read_family_file(forbid_file)), collect_witnesses=witnesses, budget=budget,
                    threads=runtime.threads, allow_large=allow_large, progress=runtime.progress)
    result = exact_ex(job)
    payload = result.to_payload()
    payload.witnesses = None
    echo_json(payload)
    if witnesses:
        echo_graphs(result.witnesses)


@click.command("f-oracle")
@click.option("--n", "n", type=int, required=True)
@click.option("--nu", type=int, required=True, help="Matching number bound ν.")
@click.option("--delta", type=int, required=True, help="Maximum degree bound Δ.")
@click.option("--witnesses", is_flag=True, help="Emit the extremal graphs as graph6 lines after the JSON.")
@click.option("--allow-large", is_flag=True, help="I understand: allow exhaustive search beyond n = 10.")
@click.option("--budget", type=int, help="Generation budget (graphs examined).")
@pass_runtime
@handle_cli_errors
def f_oracle_command(runtime: Runtime, n, nu, delta, witnesses, allow_large, budget):
    """Exhaustive max e(G) with ν(G) ≤ nu and Δ(G) ≤ delta."""
    if nu < 1 or delta < 1:
        raise ParameterError(f"nu and delta must be positive, got nu={nu}, delta={delta}")
    result = f_oracle(n, nu, delta, threads=runtime.threads, budget=budget, collect_witnesses=witnesses,
                      allow_large=allow_large, progress=runtime.progress)
    payload = result.to_payload()
    payload.witnesses = None
    echo_json(payload)
    if witnesses:
        echo_graphs(result.witnesses)
