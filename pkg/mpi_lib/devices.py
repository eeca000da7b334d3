'''
Named interferometers.

No rights reserved.
License CC0-1.0-only: https://directory.fsf.org/wiki/License:CC0
'''

import math
from typing import Callable

import numpy as np

from .scattering import Interferometer

def tritter_unitary() -> Interferometer:
    'Balanced 3x3 tritter, U[j, k] = exp(2πi (j+1)(k+1) / 3) / √3'
    index = np.arange(1, 4)
    return Interferometer(np.exp(2j * math.pi * np.outer(index, index) / 3) / math.sqrt(3))

def beam_splitter_unitary() -> Interferometer:
    'Balanced 50:50 beam splitter'
    return Interferometer(np.array([[1, 1], [1, -1]]) / math.sqrt(2))


class Device():
    ''' A named interferometer
        `factory`: builds a fresh `Interferometer`
        `hom_inputs`: the two input modes used for two-photon (HOM) measurements
        `hom_pattern`: the output pattern counted as a two-photon coincidence
    '''
    description: str
    factory: Callable[[], Interferometer]
    hom_inputs: tuple = (0, 1)
    hom_pattern: tuple = (1, 1)

    def __init__(self, description, factory, hom_pattern=(1, 1)):
        self.description = description
        self.factory = factory
        self.hom_pattern = hom_pattern

    def interferometer(self) -> Interferometer:
        return self.factory()

    @property
    def modes(self) -> int:
        return len(self.hom_pattern)

Devices = {
    'bs': Device('balanced beam splitter', beam_splitter_unitary),
    'tritter': Device('balanced three-mode tritter', tritter_unitary, hom_pattern=(1, 1, 0)),
}

def device_summary() -> str:
    'e.g. "bs (balanced beam splitter), tritter (...)"'
    return ', '.join(f'{name} ({device.description})' for name, device in Devices.items())
