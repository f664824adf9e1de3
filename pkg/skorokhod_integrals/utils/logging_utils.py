from pathlib import Path

from omegaconf import OmegaConf

from skorokhod_integrals.utils import pylogger

log = pylogger.get_pylogger(__name__)


@pylogger.main_process_only
def log_run_parameters(object_dict: dict) -> None:
    """Controls which config parts are saved next to the run outputs. Additionally saves:

    - The scenario description and its known discontinuity set
    """

    params = {}

    cfg = object_dict["cfg"]

    for key in ("scenario", "functionals", "condition", "metric", "construction"):
        node = cfg.get(key)
        if node is not None:
            params[key] = OmegaConf.to_container(node, resolve=True)

    scenario = object_dict.get("scenario")
    if scenario is not None:
        params["scenario/name"] = scenario.name
        params["scenario/horizon"] = scenario.horizon
        params["scenario/disc"] = [float(t) for t in scenario.discontinuities()]

    params["task_name"] = cfg.get("task_name")
    params["indices"] = cfg.get("indices")
    params["reps"] = cfg.get("reps")
    params["seed"] = cfg.get("seed")

    output_dir = cfg.get("paths", {}).get("output_dir")
    if not output_dir:
        log.warning("Output dir not found! Skipping run parameter logging...")
        return

    target = Path(output_dir, "run_parameters.yaml")
    OmegaConf.save(OmegaConf.create(params), target)
    log.info(f"Run parameters saved to <{target}>")
