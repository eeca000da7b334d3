import unittest
import json
import os
import tempfile

from mock import patch

from mpi_lib.i18n import MessageCatalogue, i18n

def write_catalogue(directory, lang, messages):
    with open(os.path.join(directory, lang + '.json'), 'w', encoding='utf-8') as file:
        json.dump(messages, file)

class TestMessageCatalogue(unittest.TestCase):

    def test_placeholders(self):
        with tempfile.TemporaryDirectory() as directory:
            write_catalogue(directory, 'en-US', {'suite-0-failed': 'Suite {0} failed'})
            catalogue = MessageCatalogue(directory, 'en-US')
            self.assertEqual(catalogue.translate('suite-0-failed', 'oracle'), 'Suite oracle failed')
            self.assertEqual(catalogue.translate('not-there'), 'not-there')

    def test_locale_overrides_fallback(self):
        with tempfile.TemporaryDirectory() as directory:
            write_catalogue(directory, 'en-US', {'pass': 'pass', 'fail': 'FAIL'})
            write_catalogue(directory, 'de-DE', {'pass': 'bestanden'})
            catalogue = MessageCatalogue(directory, 'de_DE')
            self.assertEqual(catalogue.lang, 'de-DE')
            self.assertEqual(catalogue.translate('pass'), 'bestanden')
            self.assertEqual(catalogue.translate('fail'), 'FAIL')

    def test_missing_locale(self):
        with tempfile.TemporaryDirectory() as directory:
            write_catalogue(directory, 'en-US', {'pass': 'pass'})
            self.assertEqual(MessageCatalogue(directory, 'fr-FR').translate('pass'), 'pass')

    def test_locale_unset(self):
        with tempfile.TemporaryDirectory() as directory:
            write_catalogue(directory, 'en-US', {'pass': 'pass'})
            with patch('locale.getlocale', return_value=(None, None)):
                self.assertEqual(MessageCatalogue(directory).lang, 'en-US')

    def test_shipped_catalogue(self):
        self.assertEqual(i18n('parameter-out-of-range-0-1-2-3', 'p', 2, 0, 1), 'p = 2 is outside [0, 1]')

if __name__ == '__main__':
    unittest.main()
