"""Load generator and APDEX analyzer for the gateway."""

from .apdex import ApdexReport, Sample, apdex_score
from .runner import Credential, LoadConfig, ScenarioStep, default_scenario, run_load
from .report import (
    parse_report_csv,
    read_samples_csv,
    render_report,
    write_samples_csv,
)
from .figures import render_figures

__all__ = [
    "ApdexReport",
    "Credential",
    "LoadConfig",
    "Sample",
    "ScenarioStep",
    "apdex_score",
    "default_scenario",
    "parse_report_csv",
    "read_samples_csv",
    "render_figures",
    "render_report",
    "run_load",
    "write_samples_csv",
]
