'''
Brute-force reference simulator in first quantization.

No rights reserved.
License CC0-1.0-only: https://directory.fsf.org/wiki/License:CC0

Each mixed internal state is split into a pure ensemble. For every
combination of ensemble members the N-photon amplitude tensor over
(mode ⊗ internal) is built by explicit symmetrization, and detection
probabilities are read off by summing |amplitude|² over internal indices.
A photon entering mode j leaves through mode k with amplitude conj(U[j, k]).
'''

import itertools
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionError, ValidationError
from .scattering import InputSpec, OutcomeDistribution, Simulator, output_patterns
from .states import DensityMatrix

ENSEMBLE_CUTOFF = 1e-14
'Eigenvalues below this are dropped from the pure ensemble'

MAX_MODES = 4
MAX_INTERNAL_DIM = 3

Ensemble = List[Tuple[float, np.ndarray]]

def pure_ensemble(state: DensityMatrix, cutoff=ENSEMBLE_CUTOFF) -> Ensemble:
    ''' Eigen-ensemble with weights in descending order. Each eigenvector is
        rotated so its largest-magnitude component is real and positive
        (first such component on ties), which makes the result reproducible.
    '''
    values, vectors = np.linalg.eigh(state.matrix)
    ensemble = []
    for index in np.argsort(-values, kind='stable'):
        weight = float(values[index])
        if weight < cutoff:
            continue
        vector = vectors[:, index]
        anchor = vector[np.argmax(np.abs(vector))]
        ensemble.append((weight, vector * np.conj(anchor) / abs(anchor)))
    total = sum(weight for weight, _ in ensemble)
    return [(weight / total, vector) for weight, vector in ensemble]


@dataclass(frozen=True)
class LabeledPhotonState():
    'One photon of one ensemble combination, after the interferometer'
    external_amplitudes: np.ndarray
    internal_pure_state: np.ndarray
    ensemble_weight: float

    def vector(self) -> np.ndarray:
        return np.kron(self.external_amplitudes, self.internal_pure_state)


class FockOracle(Simulator):
    'Explicitly symmetrized N-photon amplitudes, summed incoherently over ensembles'

    max_photons = 4

    def check(self, interferometer, spec):
        interferometer = super().check(interferometer, spec)
        if interferometer.dim > MAX_MODES:
            raise DimensionError('oracle-too-many-modes-0-1', interferometer.dim, MAX_MODES)
        if spec.internal_dim > MAX_INTERNAL_DIM:
            raise DimensionError('oracle-internal-dim-too-large-0-1',
                                 spec.internal_dim, MAX_INTERNAL_DIM)
        return interferometer

    def distribution(self, interferometer, spec: InputSpec,
                     ensembles: Optional[Sequence[Ensemble]] = None) -> OutcomeDistribution:
        ''' `ensembles`, one per photon, replaces the eigen-decomposition;
            any decomposition of the same states must give the same result
        '''
        interferometer = self.check(interferometer, spec)
        if ensembles is None:
            ensembles = [pure_ensemble(state) for state in spec.internal_states]
        elif len(ensembles) != spec.photons:
            raise DimensionError('state-count-mismatch-0-1', spec.photons, len(ensembles))
        for ensemble in ensembles:
            if abs(sum(weight for weight, _ in ensemble) - 1) > 1e-12:
                raise ValidationError('weights-not-a-distribution')

        modes, photons, dim = interferometer.dim, spec.photons, spec.internal_dim
        patterns = output_patterns(modes, photons)
        labels = self._pattern_labels(modes, photons, patterns)
        input_modes = [mode for mode, count in enumerate(spec.occupations) for _ in range(count)]
        normalization = math.sqrt(math.factorial(photons)
                                  * math.prod(math.factorial(count) for count in spec.occupations))

        totals = np.zeros(len(patterns))
        for combination in itertools.product(*ensembles):
            members = [
                LabeledPhotonState(np.conj(interferometer.matrix[mode]), vector, weight)
                for mode, (weight, vector) in zip(input_modes, combination)
            ]
            weight = math.prod(member.ensemble_weight for member in members)
            amplitude = self._symmetrized(members) / normalization
            density = np.abs(amplitude) ** 2
            density = density.reshape((modes, dim) * photons)
            external = density.sum(axis=tuple(range(1, 2 * photons, 2)))
            totals += weight * np.bincount(labels, weights=external.ravel(),
                                           minlength=len(patterns))

        result = OutcomeDistribution()
        for pattern, value in zip(patterns, totals):
            result[pattern] = float(value)
        return result

    @staticmethod
    def _symmetrized(members: List[LabeledPhotonState]) -> np.ndarray:
        vectors = [member.vector() for member in members]
        total = None
        for order in itertools.permutations(range(len(vectors))):
            term = vectors[order[0]]
            for index in order[1:]:
                term = np.multiply.outer(term, vectors[index])
            total = term if total is None else total + term
        return total

    @staticmethod
    def _pattern_labels(modes, photons, patterns) -> np.ndarray:
        'Pattern index of every detector-index tuple, in C order'
        lookup = {pattern: index for index, pattern in enumerate(patterns)}
        labels = []
        for detectors in itertools.product(range(modes), repeat=photons):
            counts = [0] * modes
            for mode in detectors:
                counts[mode] += 1
            labels.append(lookup[tuple(counts)])
        return np.array(labels, dtype=int)

def oracle_distribution(interferometer, spec: InputSpec) -> OutcomeDistribution:
    return FockOracle().distribution(interferometer, spec)
