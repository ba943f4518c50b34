"""Validate periodic-orbit certification, family maps and the critical follower force."""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

PROJECT_ROOT = Path(__file__).resolve().parents[2]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from analysis.sweeps import force_sweep
from core.logger import configure_logging
from integrator.integrator_models import EventKind, EventSpec, IntegratorConfig
from integrator.runge_kutta import integrate
from model.equations import FieldKind, ZieglerField
from model.params import Params, reference_params
from model.states import ReducedState
from periodic.detector import detect_periodic
from periodic.periodic_models import GridAxis, GridSpec, PeriodicOrbit
from periodic.symmetric_families import family_coherence, map_family

BALANCED = {"m1": 1.0, "m2": 1.0, "m3": 1.0, "l1": 1.0, "l2": 1.0, "l3": 1.0, "k2": 0.0}
REGIMES: dict[str, tuple[Params, FieldKind]] = {
    "stiff spring": (reference_params(F=0.0, k1=10.0, k2=0.0), FieldKind.REDUCED),
    "balanced lever": (Params(**BALANCED, k1=1.0, F=2.0), FieldKind.SEPARABLE),
    "no spring, pulling force": (Params(**BALANCED, k1=0.0, F=-1.0), FieldKind.SEPARABLE),
}
ORBITS_WANTED = 100
HORIZON = 200.0


def _crossings_per_period(field: ZieglerField, orbit: PeriodicOrbit, cfg: IntegratorConfig) -> int:
    check = integrate(field, orbit.anchor, cfg.with_updates(t_max=orbit.period), (EventSpec(EventKind.PHI1_ZERO),))
    margin = 1e-6 * orbit.period
    return 1 + sum(1 for event in check.events if margin < event.t < orbit.period - margin and event.transversal)


def _orbits() -> bool:
    cfg = IntegratorConfig()
    rng = np.random.default_rng(404)
    found = 0
    bad = 0
    per_regime = -(-ORBITS_WANTED // len(REGIMES))
    for name, (p, kind) in REGIMES.items():
        field = ZieglerField(p, kind)
        hits = 0
        for _ in range(4 * per_regime):
            if hits >= per_regime:
                break
            s0 = ReducedState(0.0, float(rng.uniform(0.05, 0.5)), float(rng.uniform(-0.5, 0.5)))
            outcome = detect_periodic(p, s0, cfg, horizon=HORIZON, vector_field=field)
            if not isinstance(outcome, PeriodicOrbit):
                continue
            hits += 1
            if outcome.return_defect >= 1e-6 or _crossings_per_period(field, outcome, cfg) != 2:
                bad += 1
        print(f"  {name}: {hits} orbits")
        found += hits
    ok = found >= ORBITS_WANTED and bad == 0
    print(f"[{'OK' if ok else 'FAIL'}] {found} certified orbits, {bad} violating defect or crossing count")
    return ok


def _families() -> bool:
    grid = GridSpec(v1=GridAxis(start=0.05, stop=0.5, count=21), v2=GridAxis(start=-0.5, stop=0.5, count=21))
    ok = True
    for name, (p, kind) in REGIMES.items():
        family = map_family(p, grid, IntegratorConfig(), horizon=HORIZON, kind=kind, jobs=-1)
        coherence = family_coherence(family)
        passed = coherence.largest_region_cells > 50 and coherence.row_continuity_ok
        ok = ok and passed
        print(
            f"[{'OK' if passed else 'FAIL'}] family ({name}): region {coherence.largest_region_cells} cells, "
            f"worst jump ratio {coherence.worst_jump_ratio:.2f}"
        )
    return ok


def _critical_force() -> bool:
    p = reference_params(F=0.0, k2=0.0)
    result = force_sweep(p, ReducedState(0.5, 0.0, 0.0), np.arange(0.0, 5.01, 0.25), IntegratorConfig(), jobs=-1)
    ok = result.bracket is not None and result.bracket[1] - result.bracket[0] < 0.05
    bracket = "none" if result.bracket is None else f"[{result.bracket[0]:.4f}, {result.bracket[1]:.4f}]"
    print(f"[{'OK' if ok else 'FAIL'}] critical force bracket {bracket}, monotone={result.monotone}")
    return ok


def main() -> int:
    configure_logging(run_id="run-validate-periodic", environment="development", log_level="WARNING")
    checks = [_orbits(), _families(), _critical_force()]
    print("-------------------------------------------------------------------------------")
    if all(checks):
        print(f"Validation: PASS ({len(checks)}/{len(checks)})")
        return 0
    print(f"Validation: FAIL ({sum(checks)}/{len(checks)})")
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
