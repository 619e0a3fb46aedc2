import json
import logging
from dataclasses import dataclass
from functools import wraps
from typing import Optional

import click

from balloonlab.config import Settings
from balloonlab.errors import BalloonLabError

logger = logging.getLogger(__name__)

EXIT_INTERNAL_ERROR = 1
EXIT_USAGE_ERROR = 2


@dataclass
class Runtime:
    """Settings plus the global flag overrides of one CLI invocation."""

    settings: Settings
    threads: int
    budget: int
    progress: bool = False

    def budget_or(self, override: Optional[int]) -> int:
        return override if override is not None else self.budget


pass_runtime = click.make_pass_decorator(Runtime)


def handle_cli_errors(f):
    """Decorator translating errors into a JSON diagnostic on stderr and an exit status"""
    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except BalloonLabError as e:
            logger.error(f"❌ {e.code}: {e.message}")
            click.echo(json.dumps(e.to_dict()), err=True)
            raise click.exceptions.Exit(EXIT_USAGE_ERROR)
        except Exception as e:
            logger.error(f"❌ Unexpected error in {f.__name__}: {e}", exc_info=True)
            click.echo(json.dumps({"error": str(e), "code": "INTERNAL_ERROR", "type": type(e).__name__}), err=True)
            raise click.exceptions.Exit(EXIT_INTERNAL_ERROR)

    return decorated_function
