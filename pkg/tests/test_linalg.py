import unittest
import itertools
import math

import numpy as np

from mpi_lib.errors import DimensionError, ValidationError
from mpi_lib.linalg import (CycleDecomposition, Permutation, disjoint_cycles,
                            matrix_product_trace, permanent, permanent_naive,
                            row_permuted_conjugate_hadamard)

def random_complex(rng, size):
    return (rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))) / math.sqrt(size)

class TestPermanent(unittest.TestCase):

    def test_one_by_one(self):
        self.assertEqual(permanent([[2 - 3j]]), 2 - 3j)

    def test_two_by_two(self):
        self.assertAlmostEqual(permanent([[1, 2], [3, 4]]), 10, places=12)

    def test_tritter(self):
        index = np.arange(1, 4)
        tritter = np.exp(2j * math.pi * np.outer(index, index) / 3) / math.sqrt(3)
        self.assertAlmostEqual(permanent(tritter), -1 / math.sqrt(3), places=12)
        self.assertAlmostEqual(permanent_naive(tritter), -1 / math.sqrt(3), places=12)

    def test_agrees_with_naive_sum(self):
        rng = np.random.default_rng(11)
        for size in range(1, 7):
            for _ in range(5):
                matrix = random_complex(rng, size)
                self.assertLess(abs(permanent(matrix) - permanent_naive(matrix)), 1e-12)

    def test_invariant_under_row_and_column_shuffles(self):
        rng = np.random.default_rng(12)
        for size in range(2, 7):
            matrix = random_complex(rng, size)
            shuffled = matrix[rng.permutation(size)][:, rng.permutation(size)]
            self.assertLess(abs(permanent(matrix) - permanent(shuffled)), 1e-12)

    def test_rejects_non_square(self):
        with self.assertRaises(DimensionError):
            permanent(np.ones((2, 3)))

    def test_rejects_too_large(self):
        with self.assertRaises(DimensionError):
            permanent(np.eye(21))

    def test_rejects_nan(self):
        with self.assertRaises(ValidationError):
            permanent([[1, float('nan')], [0, 1]])

class TestCycles(unittest.TestCase):

    def test_identity(self):
        cycles = disjoint_cycles([0, 1, 2])
        self.assertEqual(cycles.cycles, ((0,), (1,), (2,)))
        self.assertEqual(cycles.cycle_count, 3)

    def test_single_cycle(self):
        cycles = disjoint_cycles([1, 2, 0])
        self.assertEqual(cycles.cycles, ((0, 1, 2),))
        self.assertEqual(cycles.cycle_count, 1)

    def test_transposition(self):
        cycles = disjoint_cycles(Permutation([1, 0, 2]))
        self.assertEqual(cycles.cycles, ((0, 1), (2,)))
        self.assertEqual(cycles.cycle_count, 2)

    def test_canonical_form(self):
        cycles = disjoint_cycles([3, 2, 1, 4, 0])
        for cycle in cycles.cycles:
            self.assertEqual(cycle[0], min(cycle))
        self.assertEqual(sum(len(c) for c in cycles.cycles), 5)

    def test_composes_back(self):
        for mapping in itertools.permutations(range(5)):
            sigma = Permutation(mapping)
            self.assertEqual(disjoint_cycles(sigma).to_permutation(), sigma)

    def test_rejects_non_bijection(self):
        with self.assertRaises(ValidationError):
            disjoint_cycles([0, 0, 1])

    def test_inverse(self):
        sigma = Permutation([2, 0, 3, 1])
        inverse = sigma.inverse()
        self.assertEqual([inverse(sigma(i)) for i in range(4)], [0, 1, 2, 3])

    def test_decomposition_record(self):
        self.assertEqual(CycleDecomposition(((0, 2), (1,))).to_permutation(), Permutation([2, 1, 0]))

class TestHadamard(unittest.TestCase):

    def test_identity_gives_moduli_squared(self):
        rng = np.random.default_rng(13)
        matrix = random_complex(rng, 3)
        result = row_permuted_conjugate_hadamard(matrix, [0, 1, 2])
        np.testing.assert_allclose(result, np.abs(matrix) ** 2, atol=1e-15)
        self.assertLess(abs(permanent(result).imag), 1e-15)

    def test_entrywise(self):
        rng = np.random.default_rng(14)
        matrix = random_complex(rng, 3)
        sigma = [1, 2, 0]
        result = row_permuted_conjugate_hadamard(matrix, sigma)
        for j in range(3):
            for k in range(3):
                self.assertAlmostEqual(result[j, k], matrix[j, k] * np.conj(matrix[sigma[j], k]), places=15)

    def test_size_mismatch(self):
        with self.assertRaises(DimensionError):
            row_permuted_conjugate_hadamard(np.eye(3), [1, 0])

class TestProductTrace(unittest.TestCase):

    def test_half_identities(self):
        self.assertAlmostEqual(matrix_product_trace([np.eye(2) / 2, np.eye(2) / 2]), 0.5)

    def test_single(self):
        self.assertEqual(matrix_product_trace([[[1, 2], [3, 4j]]]), 1 + 4j)

    def test_cyclic(self):
        rng = np.random.default_rng(15)
        matrices = [random_complex(rng, 3) for _ in range(4)]
        value = matrix_product_trace(matrices)
        shifted = matrix_product_trace(matrices[1:] + matrices[:1])
        self.assertLess(abs(value - shifted), 1e-12)

    def test_psd_pairs_are_real_non_negative(self):
        rng = np.random.default_rng(16)
        for _ in range(10):
            a, b = random_complex(rng, 3), random_complex(rng, 3)
            value = matrix_product_trace([a @ a.conj().T, b @ b.conj().T])
            self.assertLess(abs(value.imag), 1e-12)
            self.assertGreaterEqual(value.real, 0)

    def test_empty(self):
        with self.assertRaises(ValidationError):
            matrix_product_trace([])

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionError):
            matrix_product_trace([np.eye(2), np.eye(3)])

if __name__ == '__main__':
    unittest.main()
