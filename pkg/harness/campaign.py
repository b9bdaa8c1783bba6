"""
Monte Carlo campaigns over a k_t sweep, plus the CSV and manifest writers.
"""
import csv
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from analytics.formulas import (
    MEASUREMENT_RATES,
    key_generation_time,
    p_s_approx,
    p_s_broadband,
    p_s_closed_form,
    throughput,
)
from analytics.stats import wilson_interval
from core.config import settings
from core.exceptions import OutputError, ValidationError
from harness.config import config_hash
from harness.pipeline import experiment_gammas, run_pipeline_trial
from schemas.adversary import JammerStrategy
from schemas.analytics import SuccessQuery
from schemas.experiment import CampaignResult, ExperimentConfig, ResultRow, TrialRecord

logger = logging.getLogger(__name__)

RESULT_COLUMNS = list(ResultRow.model_fields)
FIGURES = ("ps_vs_kt", "ts_vs_kt", "keytime_vs_kt")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def _run_point(config: ExperimentConfig, k_t: int, workers: Optional[int]) -> List[TrialRecord]:
    trials = range(config.trials)
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run_pipeline_trial, [config] * config.trials, [k_t] * config.trials, trials))
    else:
        records = [run_pipeline_trial(config, k_t, t) for t in trials]
    return sorted(records, key=lambda r: r.trial)


def summarize_point(config: ExperimentConfig, k_t: int, records: Sequence[TrialRecord]) -> ResultRow:
    """
    Aggregate one k_t point. The closed form is conditioned on the mean
    code-set power factor the trials measured; the approximation uses the
    MAI form.
    """
    if not records:
        raise ValidationError("no trial records to summarize")
    gamma_ab, gamma_eb = experiment_gammas(config)
    trials = len(records)
    successes = sum(r.success for r in records)
    low, high = wilson_interval(successes, trials)
    estimate = successes / trials

    phis = [r.phi for r in records if r.phi is not None]
    phi = float(np.mean(phis)) if phis else None
    lengths = [r.code_length for r in records if r.code_length]
    L = max(set(lengths), key=lengths.count) if lengths else config.L
    if config.jammer.strategy == JammerStrategy.RACS:
        k_r = config.jammer.k_r or k_t
        closed = p_s_closed_form(
            SuccessQuery(k_r=k_r, gamma_th=config.gamma_th, L=L, phi=phi if phi is not None else 1.0),
            gamma_ab,
            gamma_eb,
        )
    else:
        closed = p_s_broadband(config.gamma_th, gamma_ab, gamma_eb, L)
    approx = p_s_approx(SuccessQuery(k_r=config.jammer.k_r or k_t, gamma_th=config.gamma_th, L=L), gamma_ab, gamma_eb)

    symbols = sum(r.symbols for r in records)
    return ResultRow(
        k_t=k_t,
        L=L,
        P_s_simulated=estimate,
        P_s_closed_form=closed,
        P_s_approx=approx,
        T_s=throughput(config.measurement_rate, k_t, closed),
        trials=trials,
        wilson_ci_low=min(max(0.0, low), estimate),
        wilson_ci_high=max(min(1.0, high), estimate),
        key_agreement_rate=sum(r.key_agreed for r in records) / trials,
        phi_measured=phi,
        symbol_error_rate=sum(r.symbol_errors for r in records) / symbols if symbols else 0.0,
    )


def run_campaign(config: ExperimentConfig, workers: Optional[int] = None) -> CampaignResult:
    rows = []
    paprs = []
    for k_t in config.k_t_sweep:
        records = _run_point(config, k_t, workers)
        paprs.extend(r.jam_papr for r in records if r.jam_papr is not None)
        row = summarize_point(config, k_t, records)
        logger.info(
            f"k_t={k_t}: P_s simulated {row.P_s_simulated:.4f} "
            f"[{row.wilson_ci_low:.4f}, {row.wilson_ci_high:.4f}], closed form {row.P_s_closed_form:.4f}"
        )
        rows.append(row)

    summary = {
        "points": len(rows),
        "trials_per_point": config.trials,
        "jammer": config.jammer.strategy.value,
        "code_refresh": config.refresh.value,
        "closed_form_within_ci": sum(r.wilson_ci_low <= r.P_s_closed_form <= r.wilson_ci_high for r in rows),
        "mean_key_agreement_rate": float(np.mean([r.key_agreement_rate for r in rows])),
    }
    if paprs:
        # RACS sums are only average-power normalized; the peak is reported, not limited
        summary["racs_peak_to_average_max"] = float(max(paprs))
        summary["racs_peak_to_average_mean"] = float(np.mean(paprs))
    return CampaignResult(
        scenario=config.scenario,
        master_seed=config.master_seed,
        config_hash=config_hash(config),
        rows=rows,
        summary=summary,
    )


def _write_csv(path: Union[str, Path], header: List[str], rows: Iterable[List]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(v) for v in row])
    except OSError as e:
        raise OutputError(f"cannot write CSV: {e}", path=str(path))
    logger.info(f"Wrote {path}")
    return path


def write_results_csv(path: Union[str, Path], rows: Sequence[ResultRow]) -> Path:
    return _write_csv(path, RESULT_COLUMNS, ([getattr(r, c) for c in RESULT_COLUMNS] for r in rows))


def emit_figure_data(rows: Sequence[ResultRow], which: str, path: Union[str, Path]) -> Path:
    """
    Plot-ready series: ps_vs_kt (simulated and analytic columns per L),
    ts_vs_kt (one column per measurement rate) or keytime_vs_kt.
    """
    if not rows:
        raise ValidationError("no result rows to emit")
    if which not in FIGURES:
        raise ValidationError(f"unknown figure '{which}', expected one of {', '.join(FIGURES)}")
    ordered = sorted(rows, key=lambda r: (r.L, r.k_t))

    if which == "ps_vs_kt":
        header = ["series", "k_t", "P_s_simulated", "wilson_ci_low", "wilson_ci_high", "P_s_closed_form", "P_s_approx"]
        body = [
            [f"L={r.L}", r.k_t, r.P_s_simulated, r.wilson_ci_low, r.wilson_ci_high, r.P_s_closed_form, r.P_s_approx]
            for r in ordered
        ]
    elif which == "ts_vs_kt":
        header = ["series", "k_t", "T_s"]
        body = [
            [f"L={r.L},{name}", r.k_t, throughput(rate, r.k_t, r.P_s_closed_form)]
            for name, rate in MEASUREMENT_RATES.items()
            for r in ordered
        ]
    else:
        header = ["series", "k_t", "seconds"]
        k_values = sorted({r.k_t for r in rows})
        body = [[name, k, key_generation_time(k, rate)] for name, rate in MEASUREMENT_RATES.items() for k in k_values]
    return _write_csv(path, header, body)


def write_manifest(path: Union[str, Path], config: ExperimentConfig, result: CampaignResult, files: List[str]) -> Path:
    """
    Run manifest. Contains no timestamps so reruns are byte-identical.
    """
    manifest = {
        "scenario": config.scenario,
        "master_seed": config.master_seed,
        "config_hash": result.config_hash,
        "tool_version": settings.TOOL_VERSION,
        "schema_version": config.schema_version,
        "files": sorted(files),
        "summary": result.summary,
    }
    path = Path(path)
    try:
        path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as e:
        raise OutputError(f"cannot write manifest: {e}", path=str(path))
    return path


def write_campaign_outputs(out_dir: Union[str, Path], config: ExperimentConfig, result: CampaignResult) -> Dict[str, Path]:
    out_dir = Path(out_dir)
    outputs = {"results": write_results_csv(out_dir / "results.csv", result.rows)}
    for figure in FIGURES:
        outputs[figure] = emit_figure_data(result.rows, figure, out_dir / f"{figure}.csv")
    outputs["manifest"] = write_manifest(
        out_dir / "manifest.json", config, result, [p.name for p in outputs.values()]
    )
    return outputs
