import unittest
import json
import os
import tempfile

import numpy as np
from mock import patch

from mpi_lib.config import (CONFIG_VERSION, DEFAULT_SEED, SEED_ENVIRONMENT, ScenarioConfig,
                            apply_environment, complex_from_json, complex_matrix_from_json,
                            load_config, parse_floats, parse_pattern, parse_state_spec,
                            parse_unitary_spec, save_config)
from mpi_lib.errors import DimensionError, StateError, ValidationError
from mpi_lib.states import bloch_vector

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fixtures')

def write_json(directory, name, obj):
    path = os.path.join(directory, name)
    with open(path, 'w', encoding='utf-8') as file:
        json.dump(obj, file)
    return path

class TestSettings(unittest.TestCase):

    def test_defaults(self):
        settings = ScenarioConfig.defaults()
        self.assertEqual(settings.version, CONFIG_VERSION)
        self.assertEqual(settings.seed, DEFAULT_SEED)
        self.assertEqual(settings.unitary, 'tritter')
        self.assertIsNone(settings.nothing_here)

    def test_load_merges(self):
        with tempfile.TemporaryDirectory() as directory:
            path = write_json(directory, 'config.json', {'version': CONFIG_VERSION, 'seed': 7, 'unitary': 'bs'})
            settings = load_config(path)
        self.assertEqual(settings.seed, 7)
        self.assertEqual(settings.unitary, 'bs')
        self.assertEqual(settings.format, 'json')

    def test_old_version(self):
        with tempfile.TemporaryDirectory() as directory:
            path = write_json(directory, 'config.json', {'version': 0})
            with self.assertRaises(ValidationError):
                load_config(path)

    def test_version_not_an_integer(self):
        with tempfile.TemporaryDirectory() as directory:
            for version in ('one', 1.5, True, None):
                path = write_json(directory, 'config.json', {'version': version})
                with self.assertRaises(ValidationError):
                    load_config(path)

    def test_numeric_settings_checked(self):
        with tempfile.TemporaryDirectory() as directory:
            for bad in ({'seed': 'abc'}, {'weight': True}, {'grid': 2.5}, {'sigma_t': [1]}):
                path = write_json(directory, 'config.json', {'version': CONFIG_VERSION, **bad})
                with self.assertRaises(ValidationError):
                    load_config(path)

    def test_numeric_settings_coerced(self):
        settings = ScenarioConfig.defaults()
        settings.grid = 5.0
        settings.weight = 1
        settings.validate()
        self.assertIsInstance(settings.grid, int)
        self.assertEqual(settings.grid, 5)
        self.assertIsInstance(settings.weight, float)

    def test_not_an_object(self):
        with tempfile.TemporaryDirectory() as directory:
            path = write_json(directory, 'config.json', [1, 2])
            with self.assertRaises(ValidationError):
                load_config(path)

    def test_save_round_trip(self):
        settings = ScenarioConfig.defaults()
        settings.seed = 99
        settings.command = 'verify'
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'saved.json')
            save_config(settings, path)
            with open(path, 'r', encoding='utf-8') as file:
                saved = json.load(file)
            loaded = load_config(path)
        self.assertNotIn('command', saved)
        self.assertEqual(loaded.seed, 99)

    def test_environment_seed(self):
        settings = apply_environment(ScenarioConfig.defaults(), {SEED_ENVIRONMENT: '42'})
        self.assertEqual(settings.seed, 42)
        with self.assertRaises(ValidationError):
            apply_environment(ScenarioConfig.defaults(), {SEED_ENVIRONMENT: 'abc'})

    @patch.dict(os.environ, {SEED_ENVIRONMENT: '5'})
    def test_process_environment(self):
        self.assertEqual(apply_environment(ScenarioConfig.defaults()).seed, 5)

class TestComplexJson(unittest.TestCase):

    def test_numbers(self):
        self.assertEqual(complex_from_json(2), 2 + 0j)
        self.assertEqual(complex_from_json([0.5, -1]), 0.5 - 1j)

    def test_rejects(self):
        for value in ('1', [1, 2, 3], True, None):
            with self.assertRaises(ValidationError):
                complex_from_json(value)

    def test_matrix(self):
        matrix = complex_matrix_from_json([[[1, 0], 2], [0, [0, 1]]])
        np.testing.assert_array_equal(matrix, [[1, 2], [0, 1j]])
        with self.assertRaises(DimensionError):
            complex_matrix_from_json([[1, 2], [3]])
        with self.assertRaises(ValidationError):
            complex_matrix_from_json([])

class TestSpecs(unittest.TestCase):

    def test_named_unitary(self):
        self.assertEqual(parse_unitary_spec('tritter').dim, 3)
        self.assertEqual(parse_unitary_spec('bs').dim, 2)

    def test_unitary_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = write_json(directory, 'u.json', {'dim': 2, 'matrix': [[0, 1], [1, 0]]})
            self.assertEqual(parse_unitary_spec(path).dim, 2)
            wrong = write_json(directory, 'wrong.json', {'dim': 3, 'matrix': [[0, 1], [1, 0]]})
            with self.assertRaises(DimensionError):
                parse_unitary_spec(wrong)
            missing = write_json(directory, 'missing.json', {'dim': 2})
            with self.assertRaises(ValidationError):
                parse_unitary_spec(missing)
            broken = os.path.join(directory, 'broken.json')
            with open(broken, 'w', encoding='utf-8') as file:
                file.write('{"matrix": [[1, 0], ')
            with self.assertRaises(ValidationError):
                parse_unitary_spec(broken)

    def test_not_unitary_fixture(self):
        with self.assertRaises(ValidationError):
            parse_unitary_spec(os.path.join(FIXTURES, 'not_unitary.json'))

    def test_unknown_unitary(self):
        with self.assertRaises(ValidationError):
            parse_unitary_spec('no-such-device')

    def test_preparations(self):
        self.assertEqual(len(parse_state_spec('flower:0.684')), 3)
        mixed = parse_state_spec('mixed:0.816')
        np.testing.assert_allclose(bloch_vector(mixed[0]), [0, 0, 0.632], atol=1e-12)
        for spec in ('bogus:1', 'flower:x', 'flower:3'):
            with self.assertRaises(ValidationError):
                parse_state_spec(spec)

    def test_states_file(self):
        states = parse_state_spec(os.path.join(FIXTURES, 'identical.json'))
        self.assertEqual(len(states), 2)
        self.assertTrue(states[0].is_pure())
        with tempfile.TemporaryDirectory() as directory:
            path = write_json(directory, 'states.json', [
                {'bloch': [0, 0, 1]},
                {'prep': 'flower', 'theta': 0.5},
            ])
            self.assertEqual(len(parse_state_spec(path)), 4)
            too_long = write_json(directory, 'long.json', [{'bloch': [0, 0, 2]}])
            with self.assertRaises(StateError):
                parse_state_spec(too_long)
            unknown = write_json(directory, 'unknown.json', [{'kind': 'ket'}])
            with self.assertRaises(ValidationError):
                parse_state_spec(unknown)
            not_psd = write_json(directory, 'not_psd.json', [{'dim': 2, 'rho': [[2, 0], [0, -1]]}])
            with self.assertRaises(StateError):
                parse_state_spec(not_psd)

    def test_number_list(self):
        self.assertEqual(parse_floats('0.5,0.27,-0.03', 3), (0.5, 0.27, -0.03))
        self.assertEqual(parse_floats([1, 2], 2), (1.0, 2.0))
        for text in ('0.5,0.27', 'a,b,c', None):
            with self.assertRaises(ValidationError):
                parse_floats(text, 3)

    def test_pattern(self):
        self.assertEqual(parse_pattern('1,1,1'), (1, 1, 1))
        self.assertEqual(parse_pattern('3,0'), (3, 0))
        for text in ('a,b', '1,-1', ''):
            with self.assertRaises(ValidationError):
                parse_pattern(text)

if __name__ == '__main__':
    unittest.main()
