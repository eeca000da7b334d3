'''
Internal states of single photons: density matrices, Bloch / Gell-Mann
vectors, trace invariants and the three-photon preparations.

No rights reserved.
License CC0-1.0-only: https://directory.fsf.org/wiki/License:CC0
'''

import math
import cmath
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionError, GeometryError, StateError, ValidationError
from .linalg import as_matrix, matrix_product_trace

STATE_TOLERANCE = 1e-9
'Hermiticity, unit trace and positivity are checked to this tolerance'

BLOCH_TOLERANCE = 1e-10

PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

_s3 = 1 / math.sqrt(3)
GELL_MANN = np.array([
    [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
    [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]],
    [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
    [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
    [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]],
    [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
    [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]],
    [[_s3, 0, 0], [0, _s3, 0], [0, 0, -2 * _s3]],
], dtype=complex)

def _structure_constants():
    ''' d_rst = Tr({λr, λs} λt) / 4 and f_rst = -i Tr([λr, λs] λt) / 4,
        taken from the matrices rather than from a table
    '''
    triple = np.einsum('rij,sjk,tki->rst', GELL_MANN, GELL_MANN, GELL_MANN)
    swapped = triple.transpose(1, 0, 2)
    d = ((triple + swapped) / 4).real
    f = (-1j * (triple - swapped) / 4).real
    return d, f

D_SYMMETRIC, F_ANTISYMMETRIC = _structure_constants()


class DensityMatrix():
    ''' Validated internal state of one photon.
        Invalid input is rejected, never renormalized.
    '''

    matrix: np.ndarray
    'Complex d x d array, Hermitian, unit trace, positive semidefinite'
    dim: int

    def __init__(self, matrix, *, tolerance=STATE_TOLERANCE):
        array = as_matrix(matrix)
        if not np.allclose(array, array.conj().T, rtol=0, atol=tolerance):
            raise StateError('state-not-hermitian')
        trace = np.trace(array)
        if abs(trace - 1) > tolerance:
            raise StateError('state-trace-not-one-0', f'{trace.real:.6g}')
        smallest = np.linalg.eigvalsh((array + array.conj().T) / 2)[0]
        if smallest < -tolerance:
            raise StateError('state-not-positive-0', f'{smallest:.3g}')
        self.matrix = array
        self.dim = array.shape[0]

    @classmethod
    def from_pure(cls, vector):
        'Projector onto a state vector; the vector is normalized first'
        vector = np.asarray(vector, dtype=complex).reshape(-1)
        norm = np.linalg.norm(vector)
        if norm == 0 or not np.isfinite(norm):
            raise StateError('zero-state-vector')
        vector = vector / norm
        return cls(np.outer(vector, vector.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int):
        return cls(np.eye(dim) / dim)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def is_pure(self, tolerance=1e-8) -> bool:
        return self.purity() > 1 - tolerance

    def conjugate(self) -> 'DensityMatrix':
        return DensityMatrix(self.matrix.conj())

    def tensor(self, other: 'DensityMatrix') -> 'DensityMatrix':
        return DensityMatrix(np.kron(self.matrix, other.matrix))

    def __repr__(self):
        return f'DensityMatrix(dim={self.dim}, purity={self.purity():.6g})'


def as_state(state) -> DensityMatrix:
    return state if isinstance(state, DensityMatrix) else DensityMatrix(state)

def same_dim(*states) -> Tuple[DensityMatrix, ...]:
    states = tuple(as_state(s) for s in states)
    dim = states[0].dim
    for state in states[1:]:
        if state.dim != dim:
            raise DimensionError('dimension-mismatch-0-1', dim, state.dim)
    return states

def require_dim(states, dim):
    for state in states:
        if state.dim != dim:
            raise DimensionError('state-dimension-must-be-0-got-1', dim, state.dim)

# Bloch / Gell-Mann parameterizations

def bloch_vector(state) -> np.ndarray:
    'r_j = Tr(ρ σ_j) for a qubit state'
    state = as_state(state)
    require_dim((state,), 2)
    return np.real(np.einsum('ij,kji->k', state.matrix, PAULI))

def from_bloch(vector) -> DensityMatrix:
    'ρ = (I + r·σ) / 2'
    vector = np.asarray(vector, dtype=float).reshape(-1)
    if vector.shape != (3,):
        raise DimensionError('bloch-vector-length-0', vector.size)
    if np.linalg.norm(vector) > 1 + BLOCH_TOLERANCE:
        raise StateError('bloch-vector-too-long-0', f'{np.linalg.norm(vector):.6g}')
    return DensityMatrix((np.eye(2) + np.einsum('k,kij->ij', vector, PAULI)) / 2)

def gellmann_vector(state) -> np.ndarray:
    'n = √3/2 · Tr(ρ λ) for a qutrit state; |n| = 1 for pure states'
    state = as_state(state)
    require_dim((state,), 3)
    return math.sqrt(3) / 2 * np.real(np.einsum('ij,kji->k', state.matrix, GELL_MANN))

def from_gellmann(vector) -> DensityMatrix:
    'ρ = (I + √3 n·λ) / 3; raises if the result is not a state'
    vector = np.asarray(vector, dtype=float).reshape(-1)
    if vector.shape != (8,):
        raise DimensionError('gellmann-vector-length-0', vector.size)
    return DensityMatrix((np.eye(3) + math.sqrt(3) * np.einsum('k,kij->ij', vector, GELL_MANN)) / 3)

def star(a, b) -> np.ndarray:
    '(a ⋆ b)_r = √3 d_rst a_s b_t, symmetric'
    return math.sqrt(3) * np.einsum('rst,s,t->r', D_SYMMETRIC, np.asarray(a, float), np.asarray(b, float))

def wedge(a, b) -> np.ndarray:
    '(a ∧ b)_r = f_rst a_s b_t, antisymmetric'
    return np.einsum('rst,s,t->r', F_ANTISYMMETRIC, np.asarray(a, float), np.asarray(b, float))

# Trace invariants

def pairwise_trace(state_a, state_b) -> float:
    'Tr(ρa ρb), real and within [0, 1]'
    a, b = same_dim(state_a, state_b)
    return float(np.real(np.trace(a.matrix @ b.matrix)))

def triple_trace(state_a, state_b, state_c) -> complex:
    'Tr(ρa ρb ρc) from matrix products'
    a, b, c = same_dim(state_a, state_b, state_c)
    return matrix_product_trace([a.matrix, b.matrix, c.matrix])

def scalar_triple_product(ra, rb, rc) -> float:
    'V_abc = ra · (rb × rc)'
    return float(np.dot(np.asarray(ra, float), np.cross(np.asarray(rb, float), np.asarray(rc, float))))

def triple_trace_qubit_closed_form(state_a, state_b, state_c) -> complex:
    '(1 + ra·rb + ra·rc + rb·rc + i V_abc) / 4'
    ra, rb, rc = (bloch_vector(s) for s in same_dim(state_a, state_b, state_c))
    dots = np.dot(ra, rb) + np.dot(ra, rc) + np.dot(rb, rc)
    return complex(1 + dots, scalar_triple_product(ra, rb, rc)) / 4

def quad_trace_qubit(state_a, state_b, state_c, state_d) -> complex:
    ''' Tr(ρa ρb ρc ρd) for qubits, written with Bloch dot products
        and scalar triple products only
    '''
    states = same_dim(state_a, state_b, state_c, state_d)
    require_dim(states, 2)
    ra, rb, rc, rd = (bloch_vector(s) for s in states)
    dots = (np.dot(ra, rb) + np.dot(ra, rc) + np.dot(ra, rd)
            + np.dot(rb, rc) + np.dot(rb, rd) + np.dot(rc, rd))
    pairs = (np.dot(ra, rb) * np.dot(rc, rd)
             - np.dot(ra, rc) * np.dot(rb, rd)
             + np.dot(ra, rd) * np.dot(rb, rc))
    volumes = (scalar_triple_product(ra, rb, rc) + scalar_triple_product(ra, rb, rd)
               + scalar_triple_product(ra, rc, rd) + scalar_triple_product(rb, rc, rd))
    return complex(1 + dots + pairs, volumes) / 8

def triple_trace_qutrit_closed_form(state_a, state_b, state_c) -> complex:
    ''' Tr(ρa ρb ρc) for qutrits from Gell-Mann vectors:
        (1/9) [1 + 2(Σ n·n + na·(nb ⋆ nc)) + i 2√3 na·(nb ∧ nc)]
    '''
    states = same_dim(state_a, state_b, state_c)
    require_dim(states, 3)
    na, nb, nc = (gellmann_vector(s) for s in states)
    dots = np.dot(na, nb) + np.dot(na, nc) + np.dot(nb, nc)
    real = 1 + 2 * (dots + np.dot(na, star(nb, nc)))
    imag = 2 * math.sqrt(3) * np.dot(na, wedge(nb, nc))
    return complex(real, imag) / 9

def triad_phase(state_a, state_b, state_c, *, tolerance=1e-12) -> float:
    ''' arg(<a|b><b|c><c|a>) for pure states, in (-π, π].
        For pure states the triple trace is exactly that overlap product.
    '''
    states = same_dim(state_a, state_b, state_c)
    for state in states:
        if not state.is_pure():
            raise StateError('triad-phase-needs-pure-states')
    a, b, c = states
    for x, y in ((a, b), (b, c), (c, a)):
        if pairwise_trace(x, y) < tolerance:
            raise GeometryError('triad-phase-undefined-orthogonal')
    phase = cmath.phase(triple_trace(a, b, c))
    if phase <= -math.pi + tolerance:
        phase = math.pi
    return phase

# Preparations

@dataclass(frozen=True)
class PreparationTriple():
    'Three equally sized internal states and how they were made'
    states: Tuple[DensityMatrix, DensityMatrix, DensityMatrix]
    label: str = 'custom'
    'pure-flower, identical-mixed or custom'
    parameter: Optional[float] = None
    'θ for pure-flower, p for identical-mixed'

    def __post_init__(self):
        if len(self.states) != 3:
            raise ValidationError('triple-needs-three-states-0', len(self.states))
        same_dim(*self.states)

    def __iter__(self):
        return iter(self.states)

    def bloch_vectors(self) -> np.ndarray:
        return np.array([bloch_vector(s) for s in self.states])

def _check_range(name, value, low, high, slack=1e-12):
    if not (low - slack <= value <= high + slack):
        raise ValidationError('parameter-out-of-range-0-1-2-3', name, value, low, high)

def prepare_pure_flower(theta: float) -> PreparationTriple:
    ''' Three pure qubit states at polar angle θ, equally spaced in azimuth.
        Azimuths advance clockwise (0, -2π/3, -4π/3) so that V_abc is
        -(3√3/2) cos θ sin² θ with r = Tr(ρσ).
    '''
    _check_range('theta', theta, 0, math.pi / 2)
    cos, sin = math.cos(theta / 2), math.sin(theta / 2)
    states = tuple(
        DensityMatrix.from_pure([cos, cmath.exp(-2j * math.pi * k / 3) * sin])
        for k in range(3)
    )
    return PreparationTriple(states, 'pure-flower', theta)

def prepare_identical_mixed(p: float) -> PreparationTriple:
    'Three copies of ρ_p = p|0><0| + (1 - p)|1><1|'
    _check_range('p', p, 0, 1)
    state = DensityMatrix(np.diag([p, 1 - p]))
    return PreparationTriple((state, state, state), 'identical-mixed', p)

def flower_pairwise_trace(theta: float) -> float:
    return (5 + 3 * math.cos(2 * theta)) / 8

def flower_vabc(theta: float) -> float:
    return -3 * math.sqrt(3) / 2 * math.cos(theta) * math.sin(theta) ** 2

def mixed_pairwise_trace(p: float) -> float:
    return p ** 2 + (1 - p) ** 2

def mixed_purity(p: float) -> float:
    'Purity (1 + r²)/2 with r = |2p - 1|'
    return (1 + (2 * p - 1) ** 2) / 2

def matched_mixed_probability(theta: float) -> float:
    ''' The p ≥ 1/2 whose identical-mixed triple has the same pairwise trace
        as the flower at θ. Only exists while that trace is at least 1/2.
    '''
    trace = flower_pairwise_trace(theta)
    if trace < 0.5 - 1e-12:
        raise GeometryError('no-mixed-match-for-trace-0', trace)
    return (1 + math.sqrt(max(2 * trace - 1, 0.0))) / 2

def length_from_weight(weight: float) -> float:
    ''' Bloch length after mixing a pure state with its antipode at `weight`.
        With weight 0.9 this gives 0.8 (so r² = 0.64).
    '''
    _check_range('weight', weight, 0, 1)
    return abs(2 * weight - 1)

def length_from_purity(purity: float) -> float:
    ''' Bloch length of a qubit with Tr(ρ²) = `purity`.
        With purity 0.9 this gives ≈ 0.894, not 0.64 or 0.8.
    '''
    _check_range('purity', purity, 0.5, 1)
    return math.sqrt(max(2 * purity - 1, 0.0))

def antipode(state) -> DensityMatrix:
    'Qubit state with the opposite Bloch vector'
    return from_bloch(-bloch_vector(state))

def mix(states: Sequence, weights: Sequence[float]) -> DensityMatrix:
    'Convex combination Σ w_i ρ_i'
    states = same_dim(*states)
    if len(weights) != len(states):
        raise DimensionError('weights-count-mismatch-0-1', len(weights), len(states))
    if min(weights) < 0 or abs(sum(weights) - 1) > STATE_TOLERANCE:
        raise ValidationError('weights-not-a-distribution')
    return DensityMatrix(sum(w * s.matrix for w, s in zip(weights, states)))

def qutrit_gamma_vectors(gamma: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    ''' |a> = |0>, |b> = (|0> + |1>)/√2,
        |c> = (|0> + (2e^{iγ} - 1)|1> + √(4cos γ - 3)|2>)/√3
    '''
    radicand = 4 * math.cos(gamma) - 3
    if radicand < -1e-12:
        raise GeometryError('gamma-out-of-domain-0', gamma)
    a = np.array([1, 0, 0], dtype=complex)
    b = np.array([1, 1, 0], dtype=complex) / math.sqrt(2)
    c = np.array([1, 2 * cmath.exp(1j * gamma) - 1, math.sqrt(max(radicand, 0.0))]) / math.sqrt(3)
    return a, b, c

def qutrit_gamma_config(gamma: float) -> Tuple[DensityMatrix, DensityMatrix, DensityMatrix]:
    'Pure qutrits with fixed pairwise traces and triple overlap e^{iγ}/3'
    return tuple(DensityMatrix.from_pure(v) for v in qutrit_gamma_vectors(gamma))

# Volume geometry

def _bracket(unit_dots) -> float:
    ab, ac, bc = unit_dots
    return 1 - ab ** 2 - ac ** 2 - bc ** 2 + 2 * ab * ac * bc

def vabc_magnitude_from_dots(r_lengths, unit_dots, *, tolerance=1e-10) -> float:
    ''' |V_abc| = ra rb rc [1 - Σ u² + 2 Π u]^(1/2) with unit-vector dots
        u = (ab, ac, bc)
    '''
    for length in r_lengths:
        _check_range('length', length, 0, 1, slack=BLOCH_TOLERANCE)
    for dot in unit_dots:
        _check_range('dot', dot, -1, 1, slack=BLOCH_TOLERANCE)
    bracket = _bracket(unit_dots)
    if bracket < -tolerance:
        raise GeometryError('inconsistent-geometry-0', bracket)
    ra, rb, rc = r_lengths
    return ra * rb * rc * math.sqrt(max(bracket, 0.0))

@dataclass(frozen=True)
class LengthEstimate():
    length: float
    'Estimate clamped to [0, 1]'
    raw: float
    'Unclamped estimate'
    out_of_model: bool
    'Raw estimate left [0, 1] by more than 1e-6'

def _clamped(raw: float) -> LengthEstimate:
    return LengthEstimate(min(max(raw, 0.0), 1.0), raw, raw > 1 + 1e-6 or raw < -1e-6)

def infer_vector_length(unit_dots, vabc_measured: float, *, tolerance=1e-12) -> LengthEstimate:
    ''' Solve the |V_abc| magnitude formula for ra, taking rb = rc = 1
        and the unit-vector dots as known.
    '''
    bracket = _bracket(unit_dots)
    if bracket <= tolerance:
        if abs(vabc_measured) > tolerance:
            raise GeometryError('coplanar-with-nonzero-volume-0', vabc_measured)
        raise GeometryError('length-unidentifiable-coplanar')
    return _clamped(abs(vabc_measured) / math.sqrt(bracket))

def infer_vector_length_from_dots(dots, vabc_measured: float, *, tolerance=1e-12) -> LengthEstimate:
    ''' Same inversion from raw dots (ab, ac, bc) as HOM visibilities give them,
        where the first photon's length is folded into ab and ac:
        ra² (1 - bc²) = V² + ab² + ac² - 2 ab ac bc
    '''
    ab, ac, bc = dots
    denominator = 1 - bc ** 2
    if denominator <= tolerance:
        raise GeometryError('length-unidentifiable-coplanar')
    squared = (vabc_measured ** 2 + ab ** 2 + ac ** 2 - 2 * ab * ac * bc) / denominator
    return _clamped(math.sqrt(max(squared, 0.0)))

def bloch_triple_from_geometry(dots, vabc: float, lengths=(1.0, 1.0, 1.0), *,
                               tolerance=1e-2) -> Tuple[np.ndarray, float]:
    ''' Bloch vectors with the requested dots (ab, ac, bc) and the sign of `vabc`.
        ra lies along z and rb in the xz-plane with non-negative x.
        Dots and lengths fix |V_abc|; the realized value is returned and must be
        within `tolerance` of the request.
    '''
    la, lb, lc = lengths
    ab, ac, bc = dots
    if la <= 0:
        raise GeometryError('geometry-needs-nonzero-first-vector')
    ra = np.array([0.0, 0.0, la])
    bz = ab / la
    bx_squared = lb ** 2 - bz ** 2
    if bx_squared < -BLOCH_TOLERANCE:
        raise GeometryError('inconsistent-geometry-0', bx_squared)
    bx = math.sqrt(max(bx_squared, 0.0))
    rb = np.array([bx, 0.0, bz])
    cz = ac / la
    cx = (bc - bz * cz) / bx if bx > BLOCH_TOLERANCE else 0.0
    cy_squared = lc ** 2 - cx ** 2 - cz ** 2
    if cy_squared < -BLOCH_TOLERANCE:
        raise GeometryError('inconsistent-geometry-0', cy_squared)
    cy = math.copysign(math.sqrt(max(cy_squared, 0.0)), vabc)
    rc = np.array([cx, cy, cz])
    realized = scalar_triple_product(ra, rb, rc)
    if abs(abs(realized) - abs(vabc)) > tolerance:
        raise GeometryError('volume-does-not-fit-dots-0-1', vabc, realized)
    return np.array([ra, rb, rc]), realized
