from salem_lp.charsums.sums import (
    CurveMap,
    CharSumGrid,
    CHARSUM_KINDS,
    char_sum,
    char_sum_grid,
    make_grid,
    charsum_lp,
    MomentSummary,
    spectrum_link_check,
    SpectrumLink,
    parseval_check,
    ParsevalCheck,
    weil_pointwise_check,
    WeilCheck,
)
from salem_lp.charsums.kloosterman import (
    kloosterman_pointwise_check,
    KloostermanPointwise,
    kloosterman_offset_check,
    KloostermanOffset,
)

__all__ = [
    'CurveMap',
    'CharSumGrid',
    'CHARSUM_KINDS',
    'char_sum',
    'char_sum_grid',
    'make_grid',
    'charsum_lp',
    'MomentSummary',
    'spectrum_link_check',
    'SpectrumLink',
    'parseval_check',
    'ParsevalCheck',
    'weil_pointwise_check',
    'WeilCheck',
    'kloosterman_pointwise_check',
    'KloostermanPointwise',
    'kloosterman_offset_check',
    'KloostermanOffset',
]
