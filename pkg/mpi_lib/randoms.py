'''
Seeded random unitaries and states for the randomized checks.

No rights reserved.
License CC0-1.0-only: https://directory.fsf.org/wiki/License:CC0
'''

import numpy as np
from scipy.stats import unitary_group

from .scattering import Interferometer
from .states import DensityMatrix, from_bloch

def generator(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)

def generator_name(rng: np.random.Generator) -> str:
    'e.g. PCG64'
    return type(rng.bit_generator).__name__

def random_unitary(rng: np.random.Generator, dim: int) -> Interferometer:
    'Haar-random'
    return Interferometer(unitary_group.rvs(dim, random_state=rng))

def random_pure_state(rng: np.random.Generator, dim: int) -> DensityMatrix:
    vector = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return DensityMatrix.from_pure(vector)

def random_density_matrix(rng: np.random.Generator, dim: int, rank=None) -> DensityMatrix:
    'Ginibre ensemble: G G† / Tr(G G†), G of shape dim x rank'
    rank = rank or dim
    ginibre = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    matrix = ginibre @ ginibre.conj().T
    matrix = (matrix + matrix.conj().T) / 2
    return DensityMatrix(matrix / np.trace(matrix).real)

def random_bloch_vector(rng: np.random.Generator) -> np.ndarray:
    'Uniform in the unit ball'
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    return direction * rng.uniform() ** (1 / 3)

def random_qubit(rng: np.random.Generator) -> DensityMatrix:
    return from_bloch(random_bloch_vector(rng))

def random_states(rng: np.random.Generator, count: int, dim: int):
    'Mostly mixed, with a pure state mixed in now and then'
    return [random_pure_state(rng, dim) if rng.uniform() < 0.25
            else random_density_matrix(rng, dim) for _ in range(count)]
