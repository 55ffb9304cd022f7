from salem_lp.harness.records import Measurement, CellResult, SlopeFit, TrialSummary, RunRecord
from salem_lp.harness.sweep import sweep, run_cell, fit_slopes, band_ratio
from salem_lp.harness.monte_carlo import monte_carlo, threshold_constant, trial_norms, trial_seeds, wilson_interval
from salem_lp.harness.outputs import write_csv, write_json, read_csv, SWEEP_COLUMNS, TRIAL_COLUMNS

__all__ = [
    'Measurement',
    'CellResult',
    'SlopeFit',
    'TrialSummary',
    'RunRecord',
    'sweep',
    'run_cell',
    'fit_slopes',
    'band_ratio',
    'monte_carlo',
    'threshold_constant',
    'trial_norms',
    'trial_seeds',
    'wilson_interval',
    'write_csv',
    'write_json',
    'read_csv',
    'SWEEP_COLUMNS',
    'TRIAL_COLUMNS',
]
