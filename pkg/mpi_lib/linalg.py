'''
Dense complex matrix primitives: permanents, permutations, product traces.

No rights reserved.
License CC0-1.0-only: https://directory.fsf.org/wiki/License:CC0

Indices are 0-based everywhere in this module.
'''

import itertools
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .errors import DimensionError, ValidationError

MAX_PERMANENT_SIZE = 20
'Largest matrix `permanent` accepts; 2^20 * 20 steps is already slow in Python'

def as_matrix(matrix, *, square=True) -> np.ndarray:
    ''' Convert to a complex 2-d array, rejecting NaN/Inf
        and (by default) non-square shapes
    '''
    array = np.asarray(matrix, dtype=complex)
    if array.ndim != 2:
        raise DimensionError('matrix-must-be-2d-got-0', array.ndim)
    if square and array.shape[0] != array.shape[1]:
        raise DimensionError('matrix-is-not-square-0-1', *array.shape)
    if not np.all(np.isfinite(array)):
        raise ValidationError('matrix-has-non-finite-entries')
    return array

def permanent(matrix) -> complex:
    ''' Permanent by Ryser's formula, walking column subsets in Gray-code order
        so each step adds or removes one column from the running row sums.
        O(2^N * N).
    '''
    array = as_matrix(matrix)
    size = array.shape[0]
    if size > MAX_PERMANENT_SIZE:
        raise DimensionError('permanent-too-large-0-1', size, MAX_PERMANENT_SIZE)
    if size == 0:
        return 1 + 0j
    if size == 1:
        return complex(array[0, 0])
    columns = array.T.tolist()
    row_sums = [0j] * size
    subset = 0
    total = 0j
    for k in range(1, 1 << size):
        # the bit flipped between gray(k - 1) and gray(k)
        bit = (k & -k).bit_length() - 1
        column = columns[bit]
        if subset >> bit & 1:
            row_sums = [x - c for x, c in zip(row_sums, column)]
        else:
            row_sums = [x + c for x, c in zip(row_sums, column)]
        subset ^= 1 << bit
        product = 1 + 0j
        for x in row_sums:
            product *= x
        # |subset| has the parity of k
        if k & 1:
            total -= product
        else:
            total += product
    return -total if size & 1 else total

def permanent_naive(matrix) -> complex:
    'Reference permanent as the plain sum over all N! permutations'
    array = as_matrix(matrix)
    size = array.shape[0]
    total = 0j
    for perm in itertools.permutations(range(size)):
        product = 1 + 0j
        for row, col in enumerate(perm):
            product *= array[row, col]
        total += product
    return total


class Permutation():
    ''' A bijection on {0..N-1} in one-line notation:
        `mapping[i]` is the image of `i`
    '''

    mapping: Tuple[int, ...]

    def __init__(self, mapping: Sequence[int]):
        mapping = tuple(int(i) for i in mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise ValidationError('not-a-permutation-0', mapping)
        self.mapping = mapping

    @classmethod
    def identity(cls, size: int):
        return cls(range(size))

    def __len__(self):
        return len(self.mapping)

    def __call__(self, index: int) -> int:
        return self.mapping[index]

    def __iter__(self):
        return iter(self.mapping)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.mapping == other.mapping

    def __hash__(self):
        return hash(self.mapping)

    def __repr__(self):
        return f'Permutation({self.mapping})'

    def inverse(self) -> 'Permutation':
        result = [0] * len(self.mapping)
        for i, image in enumerate(self.mapping):
            result[image] = i
        return Permutation(result)


@dataclass(frozen=True)
class CycleDecomposition():
    'Disjoint cycles, each starting at its smallest element, ordered by that element'
    cycles: Tuple[Tuple[int, ...], ...]

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)

    def to_permutation(self) -> Permutation:
        'Compose the cycles back into one-line notation'
        size = sum(len(cycle) for cycle in self.cycles)
        mapping = [0] * size
        for cycle in self.cycles:
            for position, element in enumerate(cycle):
                mapping[element] = cycle[(position + 1) % len(cycle)]
        return Permutation(mapping)

def disjoint_cycles(sigma) -> CycleDecomposition:
    'Canonical cycle decomposition; fixed points are kept as 1-cycles'
    if not isinstance(sigma, Permutation):
        sigma = Permutation(sigma)
    seen = [False] * len(sigma)
    cycles = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        current = sigma(start)
        while current != start:
            cycle.append(current)
            seen[current] = True
            current = sigma(current)
        cycles.append(tuple(cycle))
    return CycleDecomposition(tuple(cycles))

def row_permuted_conjugate_hadamard(matrix, sigma) -> np.ndarray:
    ''' Elementwise product of `matrix` with the complex conjugate of itself
        whose rows are permuted by `sigma`: entry (j, k) is M[j, k] * conj(M[sigma(j), k])
    '''
    array = as_matrix(matrix)
    if not isinstance(sigma, Permutation):
        sigma = Permutation(sigma)
    if len(sigma) != array.shape[0]:
        raise DimensionError('permutation-size-mismatch-0-1', len(sigma), array.shape[0])
    return array * np.conj(array[list(sigma.mapping), :])

def matrix_product_trace(matrices: Sequence) -> complex:
    'Trace of the ordered product of equally sized square matrices'
    if len(matrices) == 0:
        raise ValidationError('empty-matrix-list')
    arrays: List[np.ndarray] = [as_matrix(m) for m in matrices]
    size = arrays[0].shape[0]
    for array in arrays[1:]:
        if array.shape[0] != size:
            raise DimensionError('dimension-mismatch-0-1', size, array.shape[0])
    product = arrays[0]
    for array in arrays[1:]:
        product = product @ array
    return complex(np.trace(product))
