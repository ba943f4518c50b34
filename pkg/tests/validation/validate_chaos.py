"""Validate the regular/chaotic split: exponents, sections and the initial-condition sweep."""

from __future__ import annotations

import math
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parents[2]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from rich.console import Console
from rich.table import Table

from analysis.analysis_models import Classification, SectionPlane
from analysis.sections import point_cloud_geometry, section
from analysis.sweeps import ic_sweep
from core.logger import configure_logging
from integrator.integrator_models import IntegratorConfig
from lyapunov.mlce import chi_vs_seed_stability, mlce
from model.params import reference_params
from model.states import FullState

REGULAR_IC = FullState(math.pi, 0.0, 0.1, 0.1)
CHAOTIC_IC = FullState(math.pi, 0.0, 20.0, 20.0)
SEEDS = [11, 23, 37, 41, 59]
T_TOTAL = 1e4


def _regular() -> tuple[bool, float]:
    p = reference_params()
    record = mlce(p, REGULAR_IC, IntegratorConfig(), SEEDS[0], T_TOTAL, 1.0)
    points = section(p, REGULAR_IC, IntegratorConfig(t_max=1e5), SectionPlane.V1_ZERO)
    geometry = point_cloud_geometry(points.points)
    ok = record.final_chi < 0.01 and geometry.curve_ratio < 0.01
    print(
        f"[{'OK' if ok else 'FAIL'}] regular branch: chi={record.final_chi:.2e}, "
        f"curve ratio={geometry.curve_ratio:.2e} over {len(points)} crossings"
    )
    return ok, record.final_chi


def _chaotic(regular_chi: float) -> bool:
    p = reference_params()
    record = mlce(p, CHAOTIC_IC, IntegratorConfig(), SEEDS[0], T_TOTAL, 1.0)
    report = chi_vs_seed_stability(p, CHAOTIC_IC, IntegratorConfig(), SEEDS, t_total=T_TOTAL, renorm_interval=1.0, jobs=-1)
    ok = record.final_chi > 0.0 and record.last_decade_min() > 5.0 * regular_chi and report.relative_spread < 0.10
    print(
        f"[{'OK' if ok else 'FAIL'}] chaotic branch: chi={record.final_chi:.3e}, "
        f"last-decade min={record.last_decade_min():.3e}, seed spread={report.relative_spread:.1%}"
    )
    return ok


def _sweep(console: Console) -> bool:
    p = reference_params()
    cfg = IntegratorConfig(t_max=1e5)
    base = ic_sweep(p, REGULAR_IC, range(10), cfg, t_total=T_TOTAL, jobs=-1)
    doubled = ic_sweep(p, REGULAR_IC, range(10), cfg, t_total=T_TOTAL, sampling_factor=2, jobs=-1)

    table = Table(title="initial-condition sweep")
    for column in ("n", "v2", "chi", "curve ratio", "label", "doubled"):
        table.add_column(column)
    for outcome, again in zip(base.outcomes, doubled.outcomes, strict=True):
        table.add_row(
            str(outcome.index),
            f"{outcome.value:.1f}",
            "-" if outcome.chi is None else f"{outcome.chi:.2e}",
            "-" if outcome.geometry is None else f"{outcome.geometry.curve_ratio:.2e}",
            "failed" if outcome.classification is None else outcome.classification.label.value,
            "failed" if again.classification is None else again.classification.label.value,
        )
    console.print(table)

    labels = base.labels()
    ok = (
        labels[0] is Classification.REGULAR
        and labels[-1] is Classification.CHAOTIC
        and labels == doubled.labels()
    )
    print(
        f"[{'OK' if ok else 'FAIL'}] sweep: {labels.count(Classification.REGULAR)} regular, "
        f"{labels.count(Classification.CHAOTIC)} chaotic, disagreements at {base.classification_failures}"
    )
    return ok


def main() -> int:
    configure_logging(run_id="run-validate-chaos", environment="development", log_level="WARNING")
    console = Console()
    regular_ok, regular_chi = _regular()
    checks = [regular_ok, _chaotic(regular_chi), _sweep(console)]
    print("-------------------------------------------------------------------------------")
    if all(checks):
        print(f"Validation: PASS ({len(checks)}/{len(checks)})")
        return 0
    print(f"Validation: FAIL ({sum(checks)}/{len(checks)})")
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
