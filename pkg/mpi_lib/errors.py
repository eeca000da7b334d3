'''
Errors raised by the simulator.

No rights reserved.
License CC0-1.0-only: https://directory.fsf.org/wiki/License:CC0
'''

from .i18n import i18n

class SimulationError(Exception):
    ''' Base of all simulator errors.
        First argument is a message key from `lang/`, the rest fill its placeholders
    '''
    message: str
    message_localized: str
    def __init__(self, *args):
        super().__init__(*args)
        self.message = args[0]
        self.message_localized = i18n(*args)

    def __str__(self):
        return self.message_localized

class ValidationError(SimulationError):
    'Input rejected: malformed matrix, invalid state, parameter out of range'

class DimensionError(ValidationError):
    'Shapes or photon numbers do not fit together'

class StateError(ValidationError):
    'Not a valid density matrix / Bloch vector'

class GeometryError(ValidationError):
    'Requested Bloch-vector geometry cannot exist'

class ConsistencyError(SimulationError):
    'A computed quantity broke an identity it must satisfy'

class OutputError(SimulationError):
    'Results could not be written'
