"""Parameter sweeps over any numeric configuration key.

A sweep reruns the numeric pipeline with one key swept across a value list
and reduces every run to a single number: ``efficiency`` (amplitude
conversion sqrt(E_p2(L)/E_in)) or ``max-deviation`` (worst numeric-vs-
analytic intensity mismatch).  Failures of individual runs are recorded in
their row and do not stop the sweep.  Workers run in threads — the heavy
kernel releases the GIL — and rows come back in input order regardless of
completion order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .config import build_config, key_type, set_value
from .errors import ValidationError
from .mbe import compare_analytic, energy_conversion, simulate

_REDUCTIONS = ("efficiency", "max-deviation")


@dataclass(frozen=True)
class SweepSpec:
    """One swept key, its values, and the per-run reduction."""

    param: str
    values: tuple
    reduction: str = "efficiency"

    def __post_init__(self):
        if not self.values:
            raise ValidationError("sweep needs at least one value")
        if self.reduction not in _REDUCTIONS:
            raise ValidationError(
                f"reduction must be one of {_REDUCTIONS}, got {self.reduction!r}"
            )


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list = field(default_factory=list)  # dicts: value, metric, error

    @property
    def metric_name(self) -> str:
        return self.spec.reduction

    def values_ok(self):
        return [r for r in self.rows if r["error"] is None]


def _run_one(base_overrides: dict, spec: SweepSpec, value) -> dict:
    try:
        overrides = set_value(base_overrides, spec.param, value)
        cfg = build_config(overrides)
        res = simulate(cfg.medium, cfg.profile, cfg.pulse, cfg.grid, store_full=False)
        if spec.reduction == "efficiency":
            metric = energy_conversion(res) ** 0.5
        else:
            metric = compare_analytic(res).max_abs_deviation
        return {"value": value, "metric": float(metric), "error": None}
    except Exception as exc:  # recorded per-row; the sweep must go on
        return {"value": value, "metric": None, "error": f"{type(exc).__name__}: {exc}"}


def run_sweep(base_overrides: dict, spec: SweepSpec, jobs: int = 1) -> SweepResult:
    """Run the sweep, optionally with several worker threads."""
    # fail fast on a sweep over a non-numeric key
    if key_type(spec.param) is str:
        raise ValidationError(f"cannot sweep the string-valued key {spec.param!r}")
    set_value(base_overrides, spec.param, spec.values[0])
    jobs = max(1, int(jobs))
    result = SweepResult(spec=spec)
    if jobs == 1:
        result.rows = [_run_one(base_overrides, spec, v) for v in spec.values]
        return result
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_one, base_overrides, spec, v)
                   for v in spec.values]
        result.rows = [f.result() for f in futures]
    return result
