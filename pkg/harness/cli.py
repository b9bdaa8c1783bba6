"""
Command-line entry point: campaigns, acceptance suites and bank tooling.
"""
import json
import logging
import sys
from typing import Optional, Tuple

import click

from core.config import settings
from core.exceptions import LabError
from dsss.bank import check_bank, generate_bank, save_bank
from harness.campaign import run_campaign, write_campaign_outputs
from harness.config import load_config
from harness.registry import record_campaign
from harness.verify import SUITES
from schemas.adversary import JammerStrategy
from schemas.experiment import ExperimentConfig

logger = logging.getLogger(__name__)


def _apply_overrides(
    config: ExperimentConfig,
    seed: Optional[int],
    trials: Optional[int],
    jammer: Optional[str],
) -> ExperimentConfig:
    data = config.model_dump()
    if seed is not None:
        data["master_seed"] = seed
    if trials is not None:
        data["trials"] = trials
    if jammer is not None:
        data["jammer"]["strategy"] = jammer
    return ExperimentConfig.model_validate(data)


def _echo_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True, default=str))


@click.group()
@click.option("--log-level", default=settings.LOG_LEVEL, show_default=True, help="Python logging level")
def cli(log_level: str) -> None:
    """PHY-key-assisted DSSS anti-jamming lab."""
    logging.basicConfig(
        level=getattr(logging, log_level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


@cli.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=None, help="Override master_seed")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--trials", type=click.IntRange(min=1), default=None, help="Override trials per k_t")
@click.option("--jammer", type=click.Choice([s.value for s in JammerStrategy]), default=None)
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker processes for trials")
@click.option("--record/--no-record", default=settings.RECORD_RUNS, help="Record the run in the registry")
def run(config_path, seed, out_dir, trials, jammer, workers, record) -> None:
    """Run a Monte Carlo campaign and write CSV outputs plus a manifest."""
    try:
        config = _apply_overrides(load_config(config_path), seed, trials, jammer)

        def execute():
            result = run_campaign(config, workers=workers)
            write_campaign_outputs(out_dir, config, result)
            return result

        if record:
            result, run_id = record_campaign(config, execute, out_dir=out_dir)
        else:
            result, run_id = execute(), None
    except LabError as e:
        raise click.ClickException(f"[{e.error_code}] {e.message}")

    for row in result.rows:
        click.echo(
            f"k_t={row.k_t:<3} P_s={row.P_s_simulated:.4f} "
            f"[{row.wilson_ci_low:.4f}, {row.wilson_ci_high:.4f}] "
            f"closed_form={row.P_s_closed_form:.4f} T_s={row.T_s:.4f}"
        )
    suffix = f" (run {run_id})" if run_id is not None else ""
    click.echo(f"Wrote outputs to {out_dir}{suffix}")


@cli.command()
@click.option("--suite", type=click.Choice(list(SUITES)), required=True)
@click.option("--full", is_flag=True, help="Acceptance-scale trial counts")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--bank", "bank_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Bank file for the msequence suite")
def verify(suite: str, full: bool, seed: int, bank_path: Optional[str]) -> None:
    """Run one acceptance suite; exits nonzero when a check fails."""
    try:
        if suite == "msequence":
            report = SUITES[suite](bank_path=bank_path)
        elif suite == "fortuna":
            report = SUITES[suite](master_seed=seed)
        else:
            report = SUITES[suite](master_seed=seed, full=full)
    except LabError as e:
        raise click.ClickException(f"[{e.error_code}] {e.message}")
    _echo_json(report)
    if not report["passed"]:
        sys.exit(1)


@cli.group()
def banks() -> None:
    """Primitive polynomial bank tools."""


@banks.command("check")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def banks_check(path: str) -> None:
    """Validate every record of a bank file."""
    try:
        report = check_bank(path)
    except LabError as e:
        raise click.ClickException(f"[{e.error_code}] {e.message}")
    _echo_json(report)
    if not report["valid"]:
        sys.exit(1)


@banks.command("export")
@click.option("--degrees", "-d", type=click.IntRange(2, 32), multiple=True, required=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def banks_export(degrees: Tuple[int, ...], out_path: str) -> None:
    """Enumerate every primitive polynomial of the given degrees into a bank file."""
    try:
        bank = generate_bank(degrees)
        save_bank(out_path, bank)
    except LabError as e:
        raise click.ClickException(f"[{e.error_code}] {e.message}")
    click.echo(f"Wrote {len(bank)} polynomials to {out_path}")


def main() -> None:
    cli(prog_name="phykey")


if __name__ == "__main__":
    main()
