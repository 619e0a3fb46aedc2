import logging
from pathlib import Path

import click

from balloonlab.middleware.cli_guard import Runtime, handle_cli_errors, pass_runtime
from balloonlab.services.verification import VerificationBattery

logger = logging.getLogger(__name__)


@click.command("verify")
@click.option("--quick", is_flag=True, help="Reduced parameter ranges (seconds instead of minutes).")
@click.option("--strict", is_flag=True, help="Exit non-zero when any check is indeterminate.")
@click.option("--json-out", type=click.Path(dir_okay=False, writable=True), help="Also write the JSON report here.")
@click.option("--only", multiple=True, help="Run only the named check; repeatable.")
@click.option("--seed", type=int, default=2024, show_default=True, help="Seed of the random infrastructure checks.")
@pass_runtime
@handle_cli_errors
@click.pass_context
def verify_command(ctx, runtime: Runtime, quick, strict, json_out, only, seed):
    """Run the reproduction battery; human-readable report on stdout."""
    battery = VerificationBattery(quick=quick, budget=runtime.budget, threads=runtime.threads, seed=seed)
    known = {name for name, _, _ in battery.checks()}
    unknown = sorted(set(only) - known)
    if unknown:
        raise click.BadParameter(f"unknown check(s) {unknown}; known: {sorted(known)}", param_hint="--only")

    report = battery.run(list(only) or None)
    click.echo(report.to_text(), nl=False)
    if json_out:
        Path(json_out).write_text(report.to_payload().model_dump_json(indent=2), encoding="utf-8")
        logger.info(f"✅ Report written to {json_out}")
    ctx.exit(report.exit_code(strict))
