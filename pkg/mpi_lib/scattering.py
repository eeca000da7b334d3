'''
Output statistics of independent photons with mixed internal states
scattered by a linear interferometer.

No rights reserved.
License CC0-1.0-only: https://directory.fsf.org/wiki/License:CC0

Photon i is the i-th entry of the input's mode assignment list and carries
`internal_states[i]`. For a permutation σ of the photons,

    P(s) = 𝒩 Σ_σ [Π_cycles Tr(ρ_α1 ρ_α2 ... ρ_αn)] perm(M ⋆ M*_σ)

where M is the scattering matrix, (M ⋆ M*_σ)[j, k] = M[j, k] conj(M[σ(j), k])
and 𝒩 = 1 / Π s_j! r_j!.
'''

import itertools
import math
from abc import ABCMeta, abstractmethod
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from .errors import ConsistencyError, DimensionError, ValidationError
from .linalg import (as_matrix, disjoint_cycles, matrix_product_trace,
                     permanent, row_permuted_conjugate_hadamard, Permutation)
from .states import DensityMatrix

UNITARY_TOLERANCE = 1e-10
IMAGINARY_TOLERANCE = 1e-10
RANGE_TOLERANCE = 1e-9

ModeOccupation = Tuple[int, ...]


class Interferometer():
    'Validated m x m unitary'

    matrix: np.ndarray
    dim: int

    def __init__(self, matrix, *, tolerance=UNITARY_TOLERANCE):
        array = as_matrix(matrix)
        deviation = np.max(np.abs(array.conj().T @ array - np.eye(array.shape[0])))
        if deviation > tolerance:
            raise ValidationError('matrix-not-unitary-0', f'{deviation:.3g}')
        self.matrix = array
        self.dim = array.shape[0]

    def __repr__(self):
        return f'Interferometer(dim={self.dim})'

def as_interferometer(value) -> Interferometer:
    return value if isinstance(value, Interferometer) else Interferometer(value)

def as_occupation(counts: Sequence[int]) -> ModeOccupation:
    'Tuple of non-negative ints, rejecting anything else'
    result = []
    for count in counts:
        if isinstance(count, float) and count.is_integer():
            count = int(count)
        if not isinstance(count, (int, np.integer)) or isinstance(count, bool):
            raise ValidationError('occupation-not-integer-0', count)
        if count < 0:
            raise ValidationError('occupation-negative-0', count)
        result.append(int(count))
    return tuple(result)

def mode_assignment(occupation: Sequence[int]) -> List[int]:
    'd(r): each mode index repeated by its occupation, non-decreasing, 0-based'
    occupation = as_occupation(occupation)
    return [mode for mode, count in enumerate(occupation) for _ in range(count)]

def scattering_matrix(interferometer, inputs: Sequence[int], outputs: Sequence[int]) -> np.ndarray:
    'Rows of U selected by d(inputs), columns by d(outputs)'
    matrix = as_interferometer(interferometer).matrix
    for occupation in (inputs, outputs):
        if len(occupation) != matrix.shape[0]:
            raise DimensionError('occupation-length-mismatch-0-1', matrix.shape[0], len(occupation))
    rows, columns = mode_assignment(inputs), mode_assignment(outputs)
    if len(rows) != len(columns):
        raise DimensionError('photon-number-mismatch-0-1', len(rows), len(columns))
    return matrix[np.ix_(rows, columns)]

def output_patterns(modes: int, photons: int) -> List[ModeOccupation]:
    ''' Every way to place `photons` in `modes`, C(N + m - 1, N) of them,
        ordered with the most photons in the first mode first
    '''
    if modes == 1:
        return [(photons,)]
    patterns = []
    for first in range(photons, -1, -1):
        for rest in output_patterns(modes - 1, photons - first):
            patterns.append((first,) + rest)
    return patterns


@dataclass(frozen=True)
class InputSpec():
    ''' At most one photon per mode; one internal state per photon,
        ordered like the mode assignment list
    '''
    occupations: ModeOccupation
    internal_states: Tuple[DensityMatrix, ...]

    def __init__(self, occupations, internal_states):
        occupations = as_occupation(occupations)
        states = tuple(s if isinstance(s, DensityMatrix) else DensityMatrix(s)
                       for s in internal_states)
        if any(count > 1 for count in occupations):
            raise ValidationError('multi-photon-input-mode-0', occupations)
        if sum(occupations) != len(states):
            raise DimensionError('state-count-mismatch-0-1', sum(occupations), len(states))
        if len(states) == 0:
            raise ValidationError('no-photons')
        for state in states[1:]:
            if state.dim != states[0].dim:
                raise DimensionError('dimension-mismatch-0-1', states[0].dim, state.dim)
        object.__setattr__(self, 'occupations', occupations)
        object.__setattr__(self, 'internal_states', states)

    @classmethod
    def in_modes(cls, modes: int, input_modes: Sequence[int], internal_states):
        'Photons entering `input_modes` (0-based) of an m-mode device'
        occupations = [0] * modes
        for mode in input_modes:
            if not 0 <= mode < modes:
                raise DimensionError('input-mode-out-of-range-0-1', mode, modes)
            occupations[mode] += 1
        order = sorted(range(len(input_modes)), key=lambda i: input_modes[i])
        return cls(occupations, [internal_states[i] for i in order])

    @property
    def photons(self) -> int:
        return len(self.internal_states)

    @property
    def modes(self) -> int:
        return len(self.occupations)

    @property
    def internal_dim(self) -> int:
        return self.internal_states[0].dim

    def conjugate(self) -> 'InputSpec':
        return InputSpec(self.occupations, [s.conjugate() for s in self.internal_states])


class OutcomeDistribution(dict):
    'Output pattern -> probability'

    def total(self) -> float:
        return float(sum(self.values()))

    def probability(self, pattern) -> float:
        return self.get(as_occupation(pattern), 0.0)


class Simulator(metaclass=ABCMeta):
    ''' Semi-abstract simulator.
        Subclasses implement `distribution`; pattern checks and
        single-pattern lookup are shared.
    '''

    max_photons: int = 8

    @abstractmethod
    def distribution(self, interferometer, spec: InputSpec) -> OutcomeDistribution:
        ...

    def probability(self, interferometer, spec: InputSpec, pattern) -> float:
        pattern = self.check_pattern(spec, pattern)
        return self.distribution(interferometer, spec).probability(pattern)

    def check(self, interferometer, spec: InputSpec) -> Interferometer:
        interferometer = as_interferometer(interferometer)
        if spec.modes != interferometer.dim:
            raise DimensionError('occupation-length-mismatch-0-1', interferometer.dim, spec.modes)
        if spec.photons > self.max_photons:
            raise DimensionError('too-many-photons-0-1', spec.photons, self.max_photons)
        return interferometer

    def check_pattern(self, spec: InputSpec, pattern) -> ModeOccupation:
        pattern = as_occupation(pattern)
        if len(pattern) != spec.modes:
            raise DimensionError('occupation-length-mismatch-0-1', spec.modes, len(pattern))
        if sum(pattern) != spec.photons:
            raise DimensionError('photon-number-mismatch-0-1', spec.photons, sum(pattern))
        return pattern


def checked_probability(value: complex) -> float:
    ''' Real part of a computed probability. The imaginary residue and any
        excursion outside [0, 1] must be tiny; only then is it clamped.
    '''
    if abs(value.imag) > IMAGINARY_TOLERANCE:
        raise ConsistencyError('probability-imaginary-residue-0', f'{value.imag:.3g}')
    real = value.real
    if real < -RANGE_TOLERANCE or real > 1 + RANGE_TOLERANCE:
        raise ConsistencyError('probability-out-of-range-0', f'{real:.12g}')
    return min(max(real, 0.0), 1.0)


class PermanentEngine(Simulator):
    ''' Sum over photon permutations of cycle-trace products times
        permanents. Cost grows as N! 2^N N, so N is capped at 8.
    '''

    def cycle_weights(self, spec: InputSpec) -> Iterator[Tuple[Permutation, complex]]:
        ''' (σ, Π cycle traces) for every σ in lexicographic order.
            Traces are memoized per cycle, as many σ share cycles.
        '''
        matrices = [s.matrix for s in spec.internal_states]
        traces: Dict[Tuple[int, ...], complex] = {}
        for mapping in itertools.permutations(range(spec.photons)):
            sigma = Permutation(mapping)
            weight = 1 + 0j
            for cycle in disjoint_cycles(sigma).cycles:
                if len(cycle) == 1:
                    continue
                if cycle not in traces:
                    traces[cycle] = matrix_product_trace([matrices[i] for i in cycle])
                weight *= traces[cycle]
            yield sigma, weight

    def _pattern_sum(self, interferometer, spec, pattern, weights) -> float:
        matrix = scattering_matrix(interferometer, spec.occupations, pattern)
        total = 0j
        for sigma, weight in weights:
            if weight == 0:
                continue
            total += weight * permanent(row_permuted_conjugate_hadamard(matrix, sigma))
        normalization = 1.0
        for count in pattern + spec.occupations:
            normalization *= math.factorial(count)
        return checked_probability(total / normalization)

    def probability(self, interferometer, spec: InputSpec, pattern) -> float:
        interferometer = self.check(interferometer, spec)
        pattern = self.check_pattern(spec, pattern)
        return self._pattern_sum(interferometer, spec, pattern, list(self.cycle_weights(spec)))

    def distribution(self, interferometer, spec: InputSpec) -> OutcomeDistribution:
        interferometer = self.check(interferometer, spec)
        weights = list(self.cycle_weights(spec))
        result = OutcomeDistribution()
        for pattern in output_patterns(spec.modes, spec.photons):
            result[pattern] = self._pattern_sum(interferometer, spec, pattern, weights)
        return result

def output_probability(interferometer, spec: InputSpec, pattern) -> float:
    return PermanentEngine().probability(interferometer, spec, pattern)

def output_distribution(interferometer, spec: InputSpec) -> OutcomeDistribution:
    return PermanentEngine().distribution(interferometer, spec)
