'''
Curve tables for the preparation and HOM figures, and their
byte-stable CSV / JSON emission.

No rights reserved.
License CC0-1.0-only: https://directory.fsf.org/wiki/License:CC0
'''

import math
import os
from typing import Callable, Dict

import numpy as np
import pandas as pd

from .errors import ValidationError
from .experiments import hom_dip, tritter_closed_form
from .states import (DensityMatrix, flower_pairwise_trace, mixed_pairwise_trace,
                     prepare_identical_mixed, prepare_pure_flower, scalar_triple_product)

SIGNIFICANT_DIGITS = 12
ZERO_THRESHOLD = 1e-14
'Emitted values smaller than this in magnitude are written as 0'

FIG1B_SPAN = 4.0
'fig1b covers Δt/σ_t in [-span, span]'

def format_number(value) -> str:
    ''' Shortest round-trip decimal, capped at 12 significant digits,
        never in exponent notation
    '''
    value = float(value)
    if not math.isfinite(value):
        return str(value)
    if abs(value) < ZERO_THRESHOLD:
        return '0'
    return np.format_float_positional(value, precision=SIGNIFICANT_DIGITS, unique=True,
                                      fractional=False, trim='-')

def _stats_columns(stats_list):
    return {
        name: [getattr(stats, name) for stats in stats_list]
        for name in ('p111', 'p120', 'p210', 'p300')
    }

def fig2c(grid: int) -> pd.DataFrame:
    '|V_abc| of the pure flower preparation against θ'
    thetas = np.linspace(0, math.pi / 2, grid)
    volumes = [abs(scalar_triple_product(*prepare_pure_flower(t).bloch_vectors())) for t in thetas]
    return pd.DataFrame({'theta': thetas, 'abs_vabc': volumes})

def fig4_pure(grid: int) -> pd.DataFrame:
    'Tritter statistics of the pure flower preparation against the pairwise trace'
    thetas = np.linspace(0, math.pi / 2, grid)
    stats = [tritter_closed_form(prepare_pure_flower(t)) for t in thetas]
    frame = {'pairwise_trace': [flower_pairwise_trace(t) for t in thetas]}
    frame.update(_stats_columns(stats))
    frame['theta'] = thetas
    return pd.DataFrame(frame)

def fig4_mixed(grid: int) -> pd.DataFrame:
    'Tritter statistics of identical ρ_p photons, p in [1/2, 1], against the pairwise trace'
    ps = np.linspace(0.5, 1, grid)
    stats = [tritter_closed_form(prepare_identical_mixed(p)) for p in ps]
    frame = {'pairwise_trace': [mixed_pairwise_trace(p) for p in ps]}
    frame.update(_stats_columns(stats))
    frame['p'] = ps
    return pd.DataFrame(frame)

def fig1b(grid: int, span=FIG1B_SPAN) -> pd.DataFrame:
    'Beam-splitter HOM dip of two identical pure photons against Δt/σ_t'
    delays = np.linspace(-span, span, grid)
    state = DensityMatrix(np.diag([1.0, 0.0]))
    curve = hom_dip(state, state, 1.0, delays)
    return pd.DataFrame({'dt_over_sigma': delays, 'p11': curve.probabilities})

Figures: Dict[str, Callable[[int], pd.DataFrame]] = {
    'fig2c': fig2c,
    'fig4-pure': fig4_pure,
    'fig4-mixed': fig4_mixed,
    'fig1b': fig1b,
}

DEFAULT_GRIDS = {'fig2c': 101, 'fig4-pure': 51, 'fig4-mixed': 51, 'fig1b': 81}

def figure_curves(which: str, grid: int = None) -> pd.DataFrame:
    if which not in Figures:
        raise ValidationError('unknown-figure-0', which)
    grid = DEFAULT_GRIDS[which] if grid is None else grid
    if grid < 2:
        raise ValidationError('grid-too-small-0', grid)
    return Figures[which](grid)

def write_csv(frame: pd.DataFrame, path: str):
    'UTF-8, LF line endings, header row, numbers through `format_number`'
    frame.to_csv(path, index=False, lineterminator='\n', encoding='utf-8',
                 float_format=format_number)

def figure_path(directory: str, which: str) -> str:
    return os.path.join(directory, which + '.csv')

def frame_records(frame: pd.DataFrame) -> list:
    'Rows as dicts of formatted numbers, for JSON output'
    return [{column: format_number(value) for column, value in row.items()}
            for row in frame.to_dict(orient='records')]
