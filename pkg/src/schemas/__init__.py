from schemas.results import RunResult, make_result
from schemas.run_config import COMMANDS, RunConfig

__all__ = ["COMMANDS", "RunConfig", "RunResult", "make_result"]
