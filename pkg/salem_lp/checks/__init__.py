from salem_lp.checks.salem_check import SalemCheck, CheckContext, Verdict, in_band
from salem_lp.checks.check_factory import CheckFactory, CheckKinds

__all__ = [
    'SalemCheck',
    'CheckContext',
    'Verdict',
    'in_band',
    'CheckFactory',
    'CheckKinds',
]
