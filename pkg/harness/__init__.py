from harness.campaign import emit_figure_data, run_campaign, summarize_point, write_campaign_outputs
from harness.config import config_hash, load_config, parse_config
from harness.pipeline import run_pipeline_trial

__all__ = [
    "config_hash",
    "emit_figure_data",
    "load_config",
    "parse_config",
    "run_campaign",
    "run_pipeline_trial",
    "summarize_point",
    "write_campaign_outputs",
]
