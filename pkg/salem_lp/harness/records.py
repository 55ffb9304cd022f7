import json
from dataclasses import dataclass, field
from typing import Optional

from salem_lp.checks import Verdict
from salem_lp.helpers.utils import json_safe
from salem_lp.spectrum import format_exponent


@dataclass
class Measurement:
    """One (q, p) cell of a sweep: measured norm next to the predicted exponent."""
    field: str
    q: int
    d: int
    set_name: str
    set_size: int
    p: float
    lp_norm: float
    s_emp: Optional[float]
    s_theory: Optional[float] = None
    ratio: Optional[float] = None
    in_band: Optional[bool] = None
    claim: str = ""

    def to_row(self) -> dict:
        return json_safe({
            "field": self.field,
            "q": self.q,
            "d": self.d,
            "set_name": self.set_name,
            "set_size": self.set_size,
            "p": format_exponent(self.p),
            "lp_norm": self.lp_norm,
            "s_emp": self.s_emp,
            "s_theory": self.s_theory,
            "ratio": self.ratio,
            "in_band": self.in_band,
            "claim": self.claim,
        })


@dataclass
class CellResult:
    field: str
    q: int
    set_size: Optional[int] = None
    measurements: list[Measurement] = field(default_factory=list)
    verdicts: list[Verdict] = field(default_factory=list)
    inadmissible: Optional[str] = None
    error: Optional[str] = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        if self.error is not None:
            return False
        return (all(v.passed is not False for v in self.verdicts)
                and all(m.in_band is not False for m in self.measurements))

    def to_dict(self) -> dict:
        return json_safe({
            "field": self.field,
            "q": self.q,
            "set_size": self.set_size,
            "passed": self.passed,
            "inadmissible": self.inadmissible,
            "error": self.error,
            "seconds": self.seconds,
            "measurements": [m.to_row() for m in self.measurements],
            "verdicts": [v.to_dict() for v in self.verdicts],
        })


@dataclass
class SlopeFit:
    """Least-squares slope of log(ratio) against log(q) for one exponent p."""
    p: float
    points: int
    slope: Optional[float]
    tolerance: float

    @property
    def holds(self) -> Optional[bool]:
        if self.slope is None:
            return None
        return abs(self.slope) <= self.tolerance

    def to_dict(self) -> dict:
        return json_safe({
            "p": format_exponent(self.p),
            "points": self.points,
            "slope": self.slope,
            "tolerance": self.tolerance,
            "holds": self.holds,
        })


@dataclass
class TrialSummary:
    """Exceedance frequency of one Monte Carlo cell with its Wilson interval."""
    field: str
    q: int
    p: float
    alpha: float
    trials: int
    exceedances: int
    threshold: float
    constant: float
    ci_low: float
    ci_high: float
    max_frequency: Optional[float] = None
    norms: list[float] = field(default_factory=list)

    @property
    def frequency(self) -> float:
        return self.exceedances / self.trials

    @property
    def passed(self) -> Optional[bool]:
        if self.max_frequency is None:
            return None
        return self.frequency < self.max_frequency

    def to_dict(self) -> dict:
        return json_safe({
            "field": self.field,
            "q": self.q,
            "p": format_exponent(self.p),
            "alpha": self.alpha,
            "trials": self.trials,
            "exceedances": self.exceedances,
            "frequency": self.frequency,
            "threshold": self.threshold,
            "constant": self.constant,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "passed": self.passed,
        })


@dataclass
class RunRecord:
    name: str
    kind: str
    config: dict
    config_hash: str
    version: str
    started_at: str
    wall_clock: float = 0.0
    cells: list[CellResult] = field(default_factory=list)
    slopes: list[SlopeFit] = field(default_factory=list)
    trials: list[TrialSummary] = field(default_factory=list)
    claims: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (all(cell.passed for cell in self.cells)
                and all(fit.holds is not False for fit in self.slopes)
                and all(summary.passed is not False for summary in self.trials))

    @property
    def failures(self) -> list[str]:
        failed = [f"{cell.field}: {cell.error}" for cell in self.cells if cell.error]
        for cell in self.cells:
            failed += [f"{cell.field}: {v.check}" for v in cell.verdicts if v.passed is False]
            failed += [f"{cell.field}: band p={format_exponent(m.p)} ratio={m.ratio:.4g}"
                       for m in cell.measurements if m.in_band is False]
        failed += [f"slope p={format_exponent(fit.p)} = {fit.slope:.4g}" for fit in self.slopes if fit.holds is False]
        failed += [f"{s.field}: exceedance {s.frequency:.3f}" for s in self.trials if s.passed is False]
        return failed

    def measurement_rows(self) -> list[dict]:
        return [m.to_row() for cell in self.cells for m in cell.measurements]

    def to_dict(self) -> dict:
        return json_safe({
            "name": self.name,
            "kind": self.kind,
            "config": self.config,
            "config_hash": self.config_hash,
            "version": self.version,
            "started_at": self.started_at,
            "wall_clock": self.wall_clock,
            "passed": self.passed,
            "claims": self.claims,
            "cells": [cell.to_dict() for cell in self.cells],
            "slopes": [fit.to_dict() for fit in self.slopes],
            "trials": [summary.to_dict() for summary in self.trials],
        })

    def measurements_equal(self, other: "RunRecord") -> bool:
        """Everything but timings and timestamps agrees."""
        def strip(record: "RunRecord") -> str:
            data = record.to_dict()
            for key in ("wall_clock", "started_at"):
                data.pop(key)
            for cell in data["cells"]:
                cell.pop("seconds")
            return json.dumps(data, sort_keys=True)
        return strip(self) == strip(other)

