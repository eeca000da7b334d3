import unittest
import math
import os
import tempfile

import numpy as np

from mpi_lib.errors import ValidationError
from mpi_lib.figures import (DEFAULT_GRIDS, Figures, figure_curves, figure_path,
                             format_number, frame_records, write_csv)

class TestFormatNumber(unittest.TestCase):

    def test_values(self):
        self.assertEqual(format_number(1 / 3), '0.333333333333')
        self.assertEqual(format_number(1.0), '1')
        self.assertEqual(format_number(0.5), '0.5')
        self.assertEqual(format_number(-0.25), '-0.25')
        self.assertEqual(format_number(123456.7890123456), '123456.789012')

    def test_tiny_values_are_zero(self):
        self.assertEqual(format_number(1e-17), '0')
        self.assertEqual(format_number(-3e-15), '0')
        self.assertEqual(format_number(-0.0), '0')

    def test_no_exponent(self):
        self.assertNotIn('e', format_number(2.5e-9))

class TestCurves(unittest.TestCase):

    def test_fig2c(self):
        frame = figure_curves('fig2c')
        self.assertEqual(len(frame), DEFAULT_GRIDS['fig2c'])
        self.assertEqual(list(frame.columns), ['theta', 'abs_vabc'])
        self.assertAlmostEqual(frame.abs_vabc.iloc[0], 0, places=14)
        self.assertAlmostEqual(frame.abs_vabc.iloc[-1], 0, places=14)
        self.assertGreater(frame.abs_vabc.max(), 0.9999)
        self.assertLessEqual(frame.abs_vabc.max(), 1 + 1e-12)
        peak = frame.theta.iloc[frame.abs_vabc.idxmax()]
        self.assertAlmostEqual(peak, math.atan(math.sqrt(2)), delta=0.02)

    def test_fig4_pure(self):
        frame = figure_curves('fig4-pure', 11)
        self.assertEqual(len(frame), 11)
        self.assertEqual(list(frame.columns), ['pairwise_trace', 'p111', 'p120', 'p210', 'p300', 'theta'])
        first = frame.iloc[0]
        self.assertAlmostEqual(first.pairwise_trace, 1)
        self.assertAlmostEqual(first.p111, 1 / 3, places=12)
        self.assertGreater(abs(frame.p210.iloc[5] - frame.p120.iloc[5]), 1e-3)

    def test_fig4_mixed(self):
        frame = figure_curves('fig4-mixed')
        self.assertEqual(len(frame), DEFAULT_GRIDS['fig4-mixed'])
        self.assertTrue((frame.p120 == frame.p210).all())
        self.assertTrue(frame.pairwise_trace.between(0.5, 1 + 1e-12).all())
        totals = frame.p111 + 3 * (frame.p120 + frame.p210 + frame.p300)
        np.testing.assert_allclose(totals, 1, atol=1e-12)

    def test_fig4_curves_share_p111(self):
        pure = figure_curves('fig4-pure', 21)
        mixed = figure_curves('fig4-mixed', 21)
        for frame in (pure, mixed):
            np.testing.assert_allclose(frame.p111, (3 + 3 * (2 * frame.pairwise_trace - 1)) / 18, atol=1e-12)

    def test_fig1b(self):
        frame = figure_curves('fig1b')
        self.assertEqual(len(frame), 81)
        np.testing.assert_allclose(frame.p11.values, frame.p11.values[::-1], atol=1e-15)
        self.assertAlmostEqual(frame.p11.iloc[40], 0, places=12)
        self.assertGreater(frame.p11.iloc[0], 0.45)

    def test_unknown(self):
        with self.assertRaises(ValidationError):
            figure_curves('fig9')
        with self.assertRaises(ValidationError):
            figure_curves('fig2c', 1)

    def test_all_registered(self):
        self.assertEqual(set(Figures), set(DEFAULT_GRIDS))

class TestWriteCsv(unittest.TestCase):

    def test_byte_stable(self):
        with tempfile.TemporaryDirectory() as directory:
            path = figure_path(directory, 'fig2c')
            self.assertTrue(path.endswith('fig2c.csv'))
            write_csv(figure_curves('fig2c', 5), path)
            with open(path, 'rb') as file:
                first = file.read()
            write_csv(figure_curves('fig2c', 5), path)
            with open(path, 'rb') as file:
                second = file.read()
        self.assertEqual(first, second)
        self.assertNotIn(b'\r', first)
        lines = first.decode('utf-8').split('\n')
        self.assertEqual(lines[0], 'theta,abs_vabc')
        self.assertEqual(lines[1], '0,0')
        self.assertEqual(lines[-1], '')
        self.assertEqual(len(lines), 7)

    def test_records(self):
        records = frame_records(figure_curves('fig2c', 3))
        self.assertEqual(records[0], {'theta': '0', 'abs_vabc': '0'})
        self.assertEqual(len(records), 3)

if __name__ == '__main__':
    unittest.main()
