'''
Scenario configuration: defaults, JSON config files, environment,
and the unitary / state / pattern specs given on the command line.

No rights reserved.
License CC0-1.0-only: https://directory.fsf.org/wiki/License:CC0
'''

import os
import json
from typing import List

import numpy as np

from .devices import Devices
from .errors import DimensionError, ValidationError
from .scattering import Interferometer, as_occupation
from .states import (DensityMatrix, from_bloch, prepare_identical_mixed,
                     prepare_pure_flower)

CONFIG_VERSION = 1
DEFAULT_SEED = 1729
SEED_ENVIRONMENT = 'MPI_SIM_SEED'


class DictAsObject(dict):
    """ Let you use a dict like an object in JavaScript.
    """
    def __getattr__(self, key):
        return self.get(key, None)
    def __setattr__(self, key, value):
        self[key] = value


class ScenarioConfig(DictAsObject):
    'Effective settings of one run'

    _blacklist = ('command', 'config_path', 'save_config')
    'Never written to a config file'

    _numeric = {'seed': int, 'trials': int, 'grid': int,
                'sigma_t': float, 'weight': float, 'vabc': float}
    'Settings that must be numbers when set; None means "use the default"'

    @classmethod
    def defaults(cls) -> 'ScenarioConfig':
        return cls({
            'version': CONFIG_VERSION,
            'unitary': 'tritter',
            'prep': 'flower:0.684',
            'states': None,
            'pattern': None,
            'input': None,
            'format': 'json',
            'output': None,
            'figure': 'all',
            'grid': None,
            'output_dir': 'figures',
            'seed': DEFAULT_SEED,
            'trials': None,
            'suite': 'all',
            'sigma_t': 1.0,
            'weight': 0.9,
            'dots': '0.5,0.27,-0.03',
            'vabc': -0.82,
        })

    def persistent(self) -> dict:
        return {key: value for key, value in self.items() if key not in self._blacklist}

    def validate(self) -> 'ScenarioConfig':
        'Coerce numeric settings in place, rejecting anything that is not a number'
        for key, kind in self._numeric.items():
            value = self.get(key)
            if value is None:
                continue
            if (isinstance(value, bool) or not isinstance(value, (int, float))
                    or (kind is int and not float(value).is_integer())):
                raise ValidationError('setting-not-a-number-0-1', key, repr(value))
            self[key] = kind(value)
        return self


def load_json(path: str):
    'Parse a JSON file, turning every failure into a validation error'
    try:
        with open(path, 'r', encoding='utf-8') as file:
            return json.load(file)
    except OSError as e:
        raise ValidationError('cannot-read-file-0-1', path, e.strerror or str(e))
    except json.JSONDecodeError as e:
        raise ValidationError('malformed-json-0-1', path, e.msg)

def load_config(path: str, settings: ScenarioConfig = None) -> ScenarioConfig:
    'Merge a config file over `settings` (or the defaults)'
    settings = settings or ScenarioConfig.defaults()
    loaded = load_json(path)
    if not isinstance(loaded, dict):
        raise ValidationError('config-not-an-object-0', path)
    loaded = DictAsObject(loaded)
    version = loaded.version
    if isinstance(version, bool) or not isinstance(version, int):
        raise ValidationError('config-version-invalid-0', repr(version))
    if version < settings.version:
        raise ValidationError('config-version-too-old-0-1', version, settings.version)
    for key in loaded:
        settings[key] = loaded[key]
    return settings.validate()

def save_config(settings: ScenarioConfig, path: str):
    with open(path, 'w', encoding='utf-8') as file:
        json.dump(settings.persistent(), file, indent=4)

def apply_environment(settings: ScenarioConfig, environment=None) -> ScenarioConfig:
    environment = os.environ if environment is None else environment
    seed = environment.get(SEED_ENVIRONMENT)
    if seed:
        try:
            settings.seed = int(seed)
        except ValueError:
            raise ValidationError('invalid-seed-0', seed)
    return settings

# Complex numbers in JSON are [re, im] pairs; plain numbers are accepted as real

def complex_from_json(value) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if (isinstance(value, list) and len(value) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)):
        return complex(value[0], value[1])
    raise ValidationError('invalid-complex-number-0', repr(value))

def complex_to_json(value) -> list:
    value = complex(value)
    return [value.real, value.imag]

def complex_matrix_from_json(rows) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(row, list) for row in rows):
        raise ValidationError('matrix-must-be-list-of-rows')
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise DimensionError('ragged-matrix-rows')
    return np.array([[complex_from_json(x) for x in row] for row in rows], dtype=complex)

def _declared_dim(obj, matrix, key):
    dim = obj.get('dim', matrix.shape[0])
    if dim != matrix.shape[0] or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError('declared-dim-mismatch-0-1-2', key, dim, 'x'.join(map(str, matrix.shape)))

def parse_unitary_spec(spec: str) -> Interferometer:
    'A device name from `Devices` or a JSON file {"dim": m, "matrix": [...]}'
    if spec in Devices:
        return Devices[spec].interferometer()
    if not os.path.exists(spec):
        raise ValidationError('unknown-unitary-0', spec)
    obj = load_json(spec)
    if not isinstance(obj, dict) or 'matrix' not in obj:
        raise ValidationError('unitary-file-needs-matrix-0', spec)
    matrix = complex_matrix_from_json(obj['matrix'])
    _declared_dim(obj, matrix, 'matrix')
    return Interferometer(matrix)

def _number(obj, key):
    value = obj.get(key)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ValidationError('state-field-not-a-number-0', key)
    return float(value)

def parse_state_object(obj) -> List[DensityMatrix]:
    ''' One state object. Named preparations expand to their three states:
        {"dim": d, "rho": [...]}, {"bloch": [x, y, z]},
        {"prep": "flower", "theta": t}, {"prep": "mixed", "p": p}
    '''
    if not isinstance(obj, dict):
        raise ValidationError('state-object-not-a-dict-0', repr(obj))
    if 'rho' in obj:
        matrix = complex_matrix_from_json(obj['rho'])
        _declared_dim(obj, matrix, 'rho')
        return [DensityMatrix(matrix)]
    if 'bloch' in obj:
        try:
            vector = [float(x) for x in obj['bloch']]
        except (TypeError, ValueError):
            raise ValidationError('invalid-bloch-vector-0', repr(obj['bloch']))
        return [from_bloch(vector)]
    prep = obj.get('prep')
    if prep == 'flower':
        return list(prepare_pure_flower(_number(obj, 'theta')))
    if prep == 'mixed':
        return list(prepare_identical_mixed(_number(obj, 'p')))
    raise ValidationError('unknown-state-object-0', json.dumps(obj))

def load_states_file(path: str) -> List[DensityMatrix]:
    'A JSON list of state objects, or a single one'
    obj = load_json(path)
    objects = obj if isinstance(obj, list) else [obj]
    states = []
    for item in objects:
        states.extend(parse_state_object(item))
    return states

def parse_state_spec(spec: str) -> List[DensityMatrix]:
    '`flower:<theta>`, `mixed:<p>` or a states file'
    if ':' in spec and not os.path.exists(spec):
        kind, _, value = spec.partition(':')
        try:
            value = float(value)
        except ValueError:
            raise ValidationError('invalid-preparation-0', spec)
        if kind == 'flower':
            return list(prepare_pure_flower(value))
        if kind == 'mixed':
            return list(prepare_identical_mixed(value))
        raise ValidationError('invalid-preparation-0', spec)
    return load_states_file(spec)

def parse_floats(text, count: int) -> tuple:
    'Comma separated numbers, exactly `count` of them; lists from a config file pass through'
    try:
        values = [float(x) for x in (text.split(',') if isinstance(text, str) else text)]
    except (TypeError, ValueError):
        raise ValidationError('invalid-number-list-0-1', text, count)
    if len(values) != count:
        raise ValidationError('invalid-number-list-0-1', text, count)
    return tuple(values)

def parse_pattern(text: str):
    'Comma separated mode counts, e.g. `1,1,1`'
    try:
        counts = [int(x) for x in text.split(',')]
    except ValueError:
        raise ValidationError('invalid-pattern-0', text)
    return as_occupation(counts)
