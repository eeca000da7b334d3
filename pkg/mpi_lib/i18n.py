'''
Message catalogue for diagnostics and help text

No rights reserved.
License CC0-1.0-only: https://directory.fsf.org/wiki/License:CC0
'''

import os
import json
import locale
from typing import Dict, Optional

FALLBACK_LANG = 'en-US'


class MessageCatalogue():
    ''' Kebab-case message ids mapped to text with `{0}`, `{1}` placeholders.
        The fallback catalogue must exist; a catalogue for the current
        locale, if present, overrides it key by key.
    '''

    lang: str
    messages: Dict[str, str]

    def __init__(self, directory: str, lang: Optional[str] = None, fallback=FALLBACK_LANG):
        self.lang = (lang or locale.getlocale()[0] or fallback).replace('_', '-')
        self.messages = self._read(directory, fallback)
        if self.lang != fallback:
            self.messages.update(self._read(directory, self.lang, required=False))

    @staticmethod
    def _read(directory: str, lang: str, required=True) -> Dict[str, str]:
        path = os.path.join(directory, lang + '.json')
        if not required and not os.path.isfile(path):
            return {}
        with open(path, 'r', encoding='utf-8') as file:
            return json.load(file)

    def translate(self, key: str, *args) -> str:
        'Unknown ids come back as themselves'
        text = self.messages.get(key, key)
        return text.format(*args) if args else text

def _identity(key, *_args):
    return key

def load_translator():
    ''' Find the `lang` folder next to the package (or in the working directory)
        and return its `translate`, or an identity function if there is none
    '''
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    for path in (os.path.join(root, 'lang'), 'lang'):
        if os.path.exists(os.path.join(path, FALLBACK_LANG + '.json')):
            return MessageCatalogue(path).translate
    return _identity

i18n = load_translator()
