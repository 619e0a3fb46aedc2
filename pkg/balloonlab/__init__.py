import logging

import click

from balloonlab.config import load_settings
from balloonlab.middleware.cli_guard import Runtime

LOG_FORMAT = '%(asctime)s %(levelname)s: %(message)s'

logger = logging.getLogger(__name__)


def create_app() -> click.Group:
    """
    Create and configure the command-line application.

    Returns:
        click.Group: the `balloonlab` command group with every subcommand registered.
    """
    @click.group("balloonlab")
    @click.option("--threads", type=click.IntRange(min=1), help="Worker processes (default BALLOONLAB_THREADS).")
    @click.option("--budget", type=click.IntRange(min=1), help="Search node budget (default BALLOONLAB_BUDGET).")
    @click.option("--log-level", help="Logging level name (default BALLOONLAB_LOG_LEVEL).")
    @click.option("--progress", is_flag=True, help="Show progress bars on stderr for long searches.")
    @click.option("--env-file", type=click.Path(dir_okay=False), help="Read settings from this .env file.")
    @click.pass_context
    def app(ctx, threads, budget, log_level, progress, env_file):
        """Odd-ballooning constructions, Turán-number predictions and their verification."""
        settings = load_settings(env_file)
        level = (log_level or settings.log_level).upper()
        if not isinstance(logging.getLevelName(level), int):
            raise click.BadParameter(f"unknown log level {level}", param_hint="--log-level")
        logging.basicConfig(level=level, format=LOG_FORMAT, force=True)
        ctx.obj = Runtime(
            settings=settings,
            threads=threads or settings.threads,
            budget=budget or settings.budget,
            progress=progress,
        )
        logger.debug(f"Runtime: threads={ctx.obj.threads} budget={ctx.obj.budget}")

    # Register commands
    from .commands.graphs import gen_command
    app.add_command(gen_command)

    from .commands.balloons import balloon_command
    app.add_command(balloon_command)

    from .commands.families import crack_all_command, crack_command, decompose_command
    app.add_command(crack_command)
    app.add_command(crack_all_command)
    app.add_command(decompose_command)

    from .commands.predictions import predict_command
    app.add_command(predict_command)

    from .commands.freeness import check_free_command
    app.add_command(check_free_command)

    from .commands.search import f_oracle_command, search_ex_command
    app.add_command(search_ex_command)
    app.add_command(f_oracle_command)

    from .commands.verify import verify_command
    app.add_command(verify_command)

    return app


def run_cli(argv=None) -> int:
    """Run the CLI on `argv` and return its exit status."""
    try:
        status = create_app().main(args=argv, prog_name="balloonlab", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        return 1
    return status if isinstance(status, int) else 0
