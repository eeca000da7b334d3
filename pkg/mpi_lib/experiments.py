'''
Concrete interference scenarios: tritter statistics, HOM dips with
temporal delay, the two three-photon preparations and the delay-sweep
measurement of the Bloch volume.

No rights reserved.
License CC0-1.0-only: https://directory.fsf.org/wiki/License:CC0

Temporal model: identical Gaussian wavepackets of duration σ_t, with
amplitude overlap g(Δt) = exp(-Δt² / (8 σ_t²)). Two-photon coincidence
envelopes then go as g² = exp(-Δt² / (4 σ_t²)).
'''

import itertools
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .devices import Devices
from .errors import ConsistencyError, ValidationError
from .scattering import InputSpec, OutcomeDistribution, PermanentEngine, Simulator
from .states import (DensityMatrix, LengthEstimate, antipode,
                     bloch_triple_from_geometry, bloch_vector, from_bloch,
                     infer_vector_length, infer_vector_length_from_dots,
                     length_from_weight, mix, pairwise_trace, scalar_triple_product,
                     as_state, require_dim, same_dim)

LARGE_DELAY_SIGMAS = 10.0
'"Large" delay in units of σ_t: g = 3.7e-6, g² = 1.4e-11'

EMBEDDING_RANK_CUTOFF = 1e-12
GRAM_TOLERANCE = 1e-9

TRITTER_CLASSES = {
    'p120': ((1, 2, 0), (0, 1, 2), (2, 0, 1)),
    'p210': ((2, 1, 0), (0, 2, 1), (1, 0, 2)),
    'p300': ((3, 0, 0), (0, 3, 0), (0, 0, 3)),
}
'Cyclic classes of three-photon tritter outcomes'

HORIZONTAL = DensityMatrix(np.diag([1.0, 0.0]))
VERTICAL = DensityMatrix(np.diag([0.0, 1.0]))


@dataclass(frozen=True)
class TritterStats():
    ''' Three-photon tritter statistics. The bracketed probabilities are
        per individual pattern, so p111 + 3 (p120 + p210 + p300) = 1
    '''
    p111: float
    p120: float
    p210: float
    p300: float

    @classmethod
    def from_distribution(cls, distribution: OutcomeDistribution) -> 'TritterStats':
        'Averages each cyclic class'
        values = {name: float(np.mean([distribution.probability(p) for p in patterns]))
                  for name, patterns in TRITTER_CLASSES.items()}
        return cls(distribution.probability((1, 1, 1)), **values)

    def total(self) -> float:
        return self.p111 + 3 * (self.p120 + self.p210 + self.p300)

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.p111, self.p120, self.p210, self.p300)

    def combine(self, other: 'TritterStats', weight: float) -> 'TritterStats':
        'self + weight * other'
        return TritterStats(*(a + weight * b for a, b in zip(self.as_tuple(), other.as_tuple())))

ZERO_STATS = TritterStats(0.0, 0.0, 0.0, 0.0)

def _qubit_triple(triple) -> Tuple[DensityMatrix, DensityMatrix, DensityMatrix]:
    states = same_dim(*triple)
    if len(states) != 3:
        raise ValidationError('triple-needs-three-states-0', len(states))
    require_dim(states, 2)
    return states

def tritter_closed_form(triple) -> TritterStats:
    'Tritter statistics of three qubit-state photons from Bloch dots and V_abc'
    ra, rb, rc = (bloch_vector(s) for s in _qubit_triple(triple))
    dots = np.dot(ra, rb) + np.dot(ra, rc) + np.dot(rb, rc)
    volume = scalar_triple_product(ra, rb, rc)
    p111 = (3 + dots) / 18
    return TritterStats(
        p111=p111,
        p120=(3 - dots - math.sqrt(3) * volume) / 36,
        p210=(3 - dots + math.sqrt(3) * volume) / 36,
        p300=2 * p111 / 3,
    )

def tritter_stats(states, simulator: Optional[Simulator] = None) -> TritterStats:
    'Tritter statistics of three photons, one per input mode, from a simulator'
    simulator = simulator or PermanentEngine()
    spec = InputSpec((1, 1, 1), list(states))
    return TritterStats.from_distribution(
        simulator.distribution(Devices['tritter'].interferometer(), spec))

def extract_vabc(stats_at_zero_delay: TritterStats) -> float:
    'V_abc = 6√3 (P_(210) - P_(120))'
    return 6 * math.sqrt(3) * (stats_at_zero_delay.p210 - stats_at_zero_delay.p120)

def two_photon_tritter_p11(state_j, state_k) -> float:
    'Coincidence of two photons through the tritter, (2 - Tr(ρj ρk)) / 9'
    return (2 - pairwise_trace(state_j, state_k)) / 9

# Temporal modes

def temporal_overlap(delta_t, sigma_t: float) -> float:
    'g(Δt); an infinite delay gives 0'
    if not sigma_t > 0:
        raise ValidationError('sigma-must-be-positive-0', sigma_t)
    if math.isinf(delta_t):
        return 0.0
    return math.exp(-delta_t ** 2 / (8 * sigma_t ** 2))

def temporal_gram(delays: Sequence[float], sigma_t: float) -> np.ndarray:
    delays = list(delays)
    return np.array([[1.0 if a == b else temporal_overlap(a - b, sigma_t)
                      for b in delays] for a in delays])

def temporal_embedding(delays: Sequence[float], sigma_t: float) -> np.ndarray:
    ''' Real vectors v_j, one row per photon, with v_j · v_k = g(t_j - t_k).
        The width is the numerical rank of the Gram matrix, so equal delays
        collapse to one dimension and far-apart delays become orthogonal.
    '''
    gram = temporal_gram(delays, sigma_t)
    values, vectors = np.linalg.eigh(gram)
    if values[0] < -GRAM_TOLERANCE:
        raise ConsistencyError('gram-not-positive-0', f'{values[0]:.3g}')
    keep = values > EMBEDDING_RANK_CUTOFF
    embedding = vectors[:, keep] * np.sqrt(values[keep])
    # unit rows, undoing truncation error
    return embedding / np.linalg.norm(embedding, axis=1, keepdims=True)

def delayed_states(states: Sequence, delays: Sequence[float], sigma_t: float) -> List[DensityMatrix]:
    'ρ_j ⊗ |v_j><v_j| for each photon'
    embedding = temporal_embedding(delays, sigma_t)
    return [as_state(state).tensor(DensityMatrix.from_pure(vector))
            for state, vector in zip(states, embedding)]


@dataclass(frozen=True)
class HomDipCurve():
    delays: Tuple[float, ...]
    'Relative delay of photon b, same unit as sigma_t'
    probabilities: Tuple[float, ...]
    'P_11 per delay'
    sigma_t: float
    visibility: float
    '(max - min) / max over the curve'
    device: str = 'bs'

def _hom_probability(state_a, state_b, delta_t, sigma_t, device_name, simulator) -> float:
    device = Devices[device_name]
    a, b = delayed_states((state_a, state_b), (0.0, delta_t), sigma_t)
    spec = InputSpec.in_modes(device.modes, device.hom_inputs, (a, b))
    return simulator.probability(device.interferometer(), spec, device.hom_pattern)

def hom_dip(state_a, state_b, sigma_t: float, delays: Sequence[float],
            device='bs', simulator: Optional[Simulator] = None) -> HomDipCurve:
    ''' Two-photon coincidence against the delay of photon b.
        On the beam splitter P_11 = (1 - Tr(ρa ρb) g²) / 2.
    '''
    if device not in Devices:
        raise ValidationError('unknown-device-0', device)
    if len(delays) == 0:
        raise ValidationError('empty-delay-list')
    simulator = simulator or PermanentEngine()
    probabilities = tuple(_hom_probability(state_a, state_b, dt, sigma_t, device, simulator)
                          for dt in delays)
    highest, lowest = max(probabilities), min(probabilities)
    visibility = (highest - lowest) / highest if highest > 0 else 0.0
    return HomDipCurve(tuple(float(d) for d in delays), probabilities, sigma_t, visibility, device)

def hom_visibility(state_a, state_b, device='bs', simulator: Optional[Simulator] = None) -> float:
    'Dip visibility from the exact zero-delay and infinite-delay coincidences'
    curve = hom_dip(state_a, state_b, 1.0, (math.inf, 0.0), device, simulator)
    return curve.visibility

def mixed_pair_by_summation(p: float, device='bs', simulator: Optional[Simulator] = None) -> float:
    ''' Zero-delay coincidence of two ρ_p photons as the weighted sum
        of the four H/V pure-pair measurements
    '''
    _check_probability(p)
    simulator = simulator or PermanentEngine()
    total = 0.0
    for first, second in itertools.product((HORIZONTAL, VERTICAL), repeat=2):
        weight = math.prod(p if s is HORIZONTAL else 1 - p for s in (first, second))
        if weight == 0:
            continue
        total += weight * hom_dip(first, second, 1.0, (0.0,), device, simulator).probabilities[0]
    return total

def _check_probability(p):
    if not 0 <= p <= 1:
        raise ValidationError('parameter-out-of-range-0-1-2-3', 'p', p, 0, 1)

def mixed_preparation_by_summation(p: float, simulator: Optional[Simulator] = None) -> TritterStats:
    ''' Tritter statistics of three ρ_p photons as the weighted sum of the
        eight H/V pure-state inputs, weights p^nH (1 - p)^nV
    '''
    _check_probability(p)
    result = ZERO_STATS
    for combination in itertools.product((HORIZONTAL, VERTICAL), repeat=3):
        horizontal = sum(1 for s in combination if s is HORIZONTAL)
        weight = p ** horizontal * (1 - p) ** (3 - horizontal)
        if weight == 0:
            continue
        result = result.combine(tritter_stats(combination, simulator), weight)
    return result

# Delay sweep

@dataclass(frozen=True)
class DelaySweepResult():
    delays: Tuple[float, ...]
    stats: Tuple[TritterStats, ...]
    'Tritter statistics per delay of the swept photon'
    vabc: float
    'V_abc from zero against large delay'
    sigma_t: float
    photon: int = 1
    large_delay_overlap: float = 0.0
    'g² between the swept photon and the others at the large delay'

def _stats_with_delay(states, photon, delay, sigma_t, simulator) -> TritterStats:
    delays = [0.0, 0.0, 0.0]
    delays[photon] = delay
    return tritter_stats(delayed_states(states, delays, sigma_t), simulator)

def delay_sweep(states, delays: Sequence[float], sigma_t: float = 1.0, photon: int = 1,
                simulator: Optional[Simulator] = None) -> DelaySweepResult:
    ''' Sweep the delay of one photon of a tritter triple. The volume is read
        from the change of P_(210) - P_(120) between zero and large delay:
        V_abc = 6√3 [(P_(210) - P_(120))(0) - (P_(210) - P_(120))(10 σ_t)]
    '''
    states = _qubit_triple(states)
    if photon not in (0, 1, 2):
        raise ValidationError('photon-index-out-of-range-0', photon)
    simulator = simulator or PermanentEngine()
    stats = tuple(_stats_with_delay(states, photon, d, sigma_t, simulator) for d in delays)
    large = LARGE_DELAY_SIGMAS * sigma_t
    vabc = (extract_vabc(_stats_with_delay(states, photon, 0.0, sigma_t, simulator))
            - extract_vabc(_stats_with_delay(states, photon, large, sigma_t, simulator)))
    return DelaySweepResult(tuple(float(d) for d in delays), stats, vabc, sigma_t, photon,
                            temporal_overlap(large, sigma_t) ** 2)

# Mixedness from the volume

DEFAULT_SCENARIO_DOTS = (0.5, 0.27, -0.03)
DEFAULT_SCENARIO_VABC = -0.82


@dataclass(frozen=True)
class VolumeScenarioReport():
    weight: float
    'Weight of the pure state when mixing the first photon with its antipode'
    target_dots: Tuple[float, float, float]
    target_vabc: float
    realized_vabc: float
    'V_abc of the constructed pure triple'
    bloch_vectors: np.ndarray
    'After mixing, rows a, b, c'
    dots: Tuple[float, float, float]
    'ab, ac, bc after mixing'
    extracted_vabc: float
    'From the delay sweep'
    inferred: LengthEstimate
    'From unit dots and the extracted volume'
    inferred_from_dots: LengthEstimate
    'From the mixed (raw) dots and the extracted volume'
    expected_length: float = 0.0

def volume_scenario(purity_weight: float, dots=DEFAULT_SCENARIO_DOTS,
                    vabc=DEFAULT_SCENARIO_VABC, sigma_t=1.0,
                    simulator: Optional[Simulator] = None) -> VolumeScenarioReport:
    ''' Build pure states with the requested dots and volume sign, mix the
        first with its antipode at `purity_weight`, sweep photon b and infer
        the first photon's Bloch length from the measured volume
    '''
    _check_probability(purity_weight)
    vectors, realized = bloch_triple_from_geometry(dots, vabc)
    pure = [from_bloch(v) for v in vectors]
    first = mix([pure[0], antipode(pure[0])], [purity_weight, 1 - purity_weight])
    states = (first, pure[1], pure[2])
    sweep = delay_sweep(states, (0.0, LARGE_DELAY_SIGMAS * sigma_t), sigma_t, 1, simulator)
    mixed = np.array([bloch_vector(s) for s in states])
    measured = (float(np.dot(mixed[0], mixed[1])), float(np.dot(mixed[0], mixed[2])),
                float(np.dot(mixed[1], mixed[2])))
    return VolumeScenarioReport(
        weight=purity_weight,
        target_dots=tuple(dots),
        target_vabc=vabc,
        realized_vabc=realized,
        bloch_vectors=mixed,
        dots=measured,
        extracted_vabc=sweep.vabc,
        inferred=infer_vector_length(tuple(dots), sweep.vabc),
        inferred_from_dots=infer_vector_length_from_dots(measured, sweep.vabc),
        expected_length=length_from_weight(purity_weight),
    )
