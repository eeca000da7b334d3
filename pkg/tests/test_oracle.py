import unittest
import math

import numpy as np

from mpi_lib.devices import beam_splitter_unitary, tritter_unitary
from mpi_lib.errors import DimensionError, ValidationError
from mpi_lib.oracle import FockOracle, LabeledPhotonState, oracle_distribution, pure_ensemble
from mpi_lib.randoms import random_states, random_unitary
from mpi_lib.scattering import InputSpec, PermanentEngine
from mpi_lib.states import DensityMatrix, prepare_identical_mixed, prepare_pure_flower

ZERO = DensityMatrix(np.diag([1.0, 0.0]))
ONE = DensityMatrix(np.diag([0.0, 1.0]))
HALF = DensityMatrix.maximally_mixed(2)

class TestPureEnsemble(unittest.TestCase):

    def test_pure_state(self):
        ensemble = pure_ensemble(DensityMatrix.from_pure([1, 1j]))
        self.assertEqual(len(ensemble), 1)
        weight, vector = ensemble[0]
        self.assertAlmostEqual(weight, 1)
        self.assertAlmostEqual(np.linalg.norm(vector), 1)

    def test_descending_weights(self):
        ensemble = pure_ensemble(prepare_identical_mixed(0.3).states[0])
        self.assertEqual([round(w, 12) for w, _ in ensemble], [0.7, 0.3])

    def test_phase_convention(self):
        rng = np.random.default_rng(41)
        for state in random_states(rng, 5, 3):
            for _, vector in pure_ensemble(state):
                anchor = vector[np.argmax(np.abs(vector))]
                self.assertAlmostEqual(anchor.imag, 0, places=14)
                self.assertGreater(anchor.real, 0)

    def test_reconstructs_state(self):
        rng = np.random.default_rng(42)
        for state in random_states(rng, 5, 3):
            rebuilt = sum(w * np.outer(v, v.conj()) for w, v in pure_ensemble(state))
            np.testing.assert_allclose(rebuilt, state.matrix, atol=1e-12)

    def test_labeled_photon_vector(self):
        photon = LabeledPhotonState(np.array([1, 0]), np.array([0, 1]), 1.0)
        np.testing.assert_array_equal(photon.vector(), [0, 1, 0, 0])

class TestFockOracle(unittest.TestCase):

    def test_hom_identical(self):
        distribution = oracle_distribution(beam_splitter_unitary(), InputSpec((1, 1), [ZERO, ZERO]))
        self.assertAlmostEqual(distribution[(1, 1)], 0, places=14)
        self.assertAlmostEqual(distribution[(2, 0)], 0.5, places=14)

    def test_hom_orthogonal(self):
        distribution = oracle_distribution(beam_splitter_unitary(), InputSpec((1, 1), [ZERO, ONE]))
        self.assertAlmostEqual(distribution[(1, 1)], 0.5, places=14)

    def test_tritter_identical(self):
        distribution = oracle_distribution(tritter_unitary(), InputSpec((1, 1, 1), [ZERO] * 3))
        self.assertAlmostEqual(distribution[(1, 1, 1)], 1 / 3, places=12)
        self.assertAlmostEqual(distribution[(0, 3, 0)], 2 / 9, places=12)

    def test_matches_engine_on_preparations(self):
        engine, oracle = PermanentEngine(), FockOracle()
        for triple in (prepare_identical_mixed(0.816), prepare_pure_flower(0.684)):
            spec = InputSpec((1, 1, 1), triple.states)
            expected = oracle.distribution(tritter_unitary(), spec)
            actual = engine.distribution(tritter_unitary(), spec)
            for pattern, probability in expected.items():
                self.assertAlmostEqual(actual[pattern], probability, delta=1e-10)

    def test_matches_engine_on_random_instances(self):
        rng = np.random.default_rng(43)
        engine, oracle = PermanentEngine(), FockOracle()
        for _ in range(20):
            photons = int(rng.integers(2, 5))
            modes = int(rng.integers(photons, 5))
            dim = int(rng.integers(2, 4))
            interferometer = random_unitary(rng, modes)
            input_modes = sorted(rng.choice(modes, size=photons, replace=False).tolist())
            spec = InputSpec.in_modes(modes, input_modes, random_states(rng, photons, dim))
            expected = oracle.distribution(interferometer, spec)
            actual = engine.distribution(interferometer, spec)
            self.assertEqual(set(expected), set(actual))
            for pattern, probability in expected.items():
                self.assertAlmostEqual(actual[pattern], probability, delta=1e-10)
            self.assertAlmostEqual(expected.total(), 1, places=10)

    def test_shared_input_mode(self):
        spec = InputSpec((2, 0), [ZERO, ZERO])
        for distribution in (oracle_distribution(beam_splitter_unitary(), spec),
                             PermanentEngine().distribution(beam_splitter_unitary(), spec)):
            self.assertAlmostEqual(distribution[(2, 0)], 0.25, places=12)
            self.assertAlmostEqual(distribution[(1, 1)], 0.5, places=12)
            self.assertAlmostEqual(distribution[(0, 2)], 0.25, places=12)

    def test_matches_engine_with_shared_input_mode(self):
        rng = np.random.default_rng(45)
        engine, oracle = PermanentEngine(), FockOracle()
        for occupations in ((2, 1, 0), (0, 3, 0), (2, 0, 1)):
            interferometer = random_unitary(rng, 3)
            spec = InputSpec(occupations, random_states(rng, 3, 2))
            expected = oracle.distribution(interferometer, spec)
            actual = engine.distribution(interferometer, spec)
            for pattern, probability in expected.items():
                self.assertAlmostEqual(actual[pattern], probability, delta=1e-10)

    def test_pattern_checked(self):
        spec = InputSpec((1, 1), [ZERO, ONE])
        for pattern in ((1, 1, 0), (2, 1), (1, -1)):
            with self.assertRaises(ValidationError):
                FockOracle().probability(beam_splitter_unitary(), spec, pattern)
        self.assertAlmostEqual(FockOracle().probability(beam_splitter_unitary(), spec, (1, 1)), 0.5,
                               places=14)

    def test_decomposition_independence(self):
        rng = np.random.default_rng(44)
        interferometer = random_unitary(rng, 3)
        spec = InputSpec((1, 1, 1), [HALF, ZERO, HALF])
        plus = np.array([1, 1]) / math.sqrt(2)
        minus = np.array([1, -1]) / math.sqrt(2)
        rotated = [(0.5, plus), (0.5, minus)]
        oracle = FockOracle()
        default = oracle.distribution(interferometer, spec)
        other = oracle.distribution(interferometer, spec, [rotated, pure_ensemble(ZERO), rotated])
        for pattern, probability in default.items():
            self.assertAlmostEqual(other[pattern], probability, places=12)

    def test_ensemble_weights_checked(self):
        spec = InputSpec((1, 1), [HALF, HALF])
        bad = [(0.5, np.array([1, 0])), (0.4, np.array([0, 1]))]
        with self.assertRaises(ValidationError):
            FockOracle().distribution(beam_splitter_unitary(), spec, [bad, bad])
        with self.assertRaises(DimensionError):
            FockOracle().distribution(beam_splitter_unitary(), spec, [bad])

    def test_limits(self):
        with self.assertRaises(DimensionError):
            oracle_distribution(np.eye(5), InputSpec((1, 1, 0, 0, 0), [ZERO, ZERO]))
        qudit = DensityMatrix.maximally_mixed(4)
        with self.assertRaises(DimensionError):
            oracle_distribution(np.eye(2), InputSpec((1, 1), [qudit, qudit]))

if __name__ == '__main__':
    unittest.main()
