"""Python access to the upfmec simulator core."""

import json

from ._upfmec import (
    BoundExceeded,
    RunResult,
    Scenario,
    ScenarioError,
    ScenarioParseError,
    compare_csv,
    minmax_batch_optimum,
    net_delay,
    run,
    scheme_names,
    sequential_heuristic_batch,
    upf_projected_delay,
    worst_case_batch_delay,
)


def summary(result):
    """Summary report of a run as a dict (same content as the .summary.json file)."""
    return json.loads(result.summary_json())


__all__ = [
    "BoundExceeded",
    "RunResult",
    "Scenario",
    "ScenarioError",
    "ScenarioParseError",
    "compare_csv",
    "minmax_batch_optimum",
    "net_delay",
    "run",
    "scheme_names",
    "sequential_heuristic_batch",
    "summary",
    "upf_projected_delay",
    "worst_case_batch_delay",
]
