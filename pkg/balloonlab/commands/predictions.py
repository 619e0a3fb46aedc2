import logging

import click

from balloonlab.commands.inputs import FAMILY_CHOICE, echo_json, resolve_graph
from balloonlab.errors import ParameterError
from balloonlab.middleware.cli_guard import Runtime, handle_cli_errors, pass_runtime
from balloonlab.services import graph6
from balloonlab.services.formulas import PredictionMode, predict_chi4, predict_ex_balloon, predict_ex_decomposition
from balloonlab.services.graph import chromatic_number

logger = logging.getLogger(__name__)


@click.command("predict")
@click.option("--fbullet", "fbullet_text", help="F• as graph6; the skeleton is K_1 ∇ F•.")
@click.option("--family", "family_name", type=FAMILY_CHOICE, help="Named family; F• is taken from it.")
@click.option("--k", "family_k", type=int, help="Parameter of --family.")
@click.option("--skeleton", "skeleton_text", help="Skeleton F as graph6 (chi4 mode only).")
@click.option("--n", "n", type=int, required=True, help="Number of vertices.")
@click.option("--mode", type=click.Choice([m.value for m in PredictionMode]), default="balloon", show_default=True)
@pass_runtime
@handle_cli_errors
def predict_command(runtime: Runtime, fbullet_text, family_name, family_k, skeleton_text, n, mode):
    """Predicted extremal graph and edge count, as JSON."""
    mode = PredictionMode(mode)
    if mode is PredictionMode.CHI4:
        if skeleton_text is not None:
            chi = chromatic_number(graph6.decode(skeleton_text))
            if chi < 4:
                logger.warning(f"chi4 prediction requested for a skeleton with χ(F) = {chi} < 4")
        echo_json(predict_chi4(n).to_payload())
        return

    if skeleton_text is not None:
        raise ParameterError("--skeleton is only read in chi4 mode; give --fbullet or --family")
    F_bullet = resolve_graph(fbullet_text, family_name, family_k, bullet=True)
    if mode is PredictionMode.BALLOON:
        prediction = predict_ex_balloon(F_bullet, n, large_n=runtime.settings.large_n)
    else:
        prediction = predict_ex_decomposition(F_bullet, n, large_n=runtime.settings.large_n)
    if prediction.conjectural:
        logger.info(f"n={n} is below {runtime.settings.large_n}; the prediction is conjectural")
    echo_json(prediction.to_payload())
