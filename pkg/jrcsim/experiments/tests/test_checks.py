import numpy as np
import pandas as pd
from django.test import SimpleTestCase

from core.config import ProcessingTimes
from core.tests.utils import default_config
from experiments.checks import (
    check_ber, check_mc, check_throughput, check_timing, log_checks,
)
from protocol.timing import timing_table


def mc_frame(values, channel='free', waveform='jrc'):
    return pd.DataFrame([
        {
            'experiment': 'mc_point', 'channel': channel,
            'waveform': waveform, 'snr_db': snr,
            'rmse_range_m': value, 'rmse_azimuth_deg': value,
            'rmse_velocity_mps': value,
        }
        for snr, value in zip((0, 5, 10, 15, 20, 25), values)
    ])


class TimingCheckTest(SimpleTestCase):
    def test_defaults_pass(self):
        config = default_config()
        checks = check_timing(timing_table(config), config)
        self.assertEqual(len(checks), 5)
        self.assertTrue(all(item.passed for item in checks),
                        '\n'.join(map(str, checks)))

    def test_slow_rsp_fails(self):
        config = default_config()
        slow = config.replace(processing_times=ProcessingTimes(rsp=32e-3))
        checks = check_timing(timing_table(slow), slow)
        self.assertFalse(log_checks(checks))


class MonteCarloCheckTest(SimpleTestCase):
    def test_monotone_with_slack(self):
        frame = mc_frame([0.5, 0.3, 0.2, 0.1, 0.105, 0.1])
        self.assertTrue(all(item.passed for item in check_mc(frame)))

    def test_rising_rmse_fails(self):
        frame = mc_frame([0.5, 0.3, 0.2, 0.1, 0.1, 0.3])
        failed = [item.name for item in check_mc(frame) if not item.passed]
        self.assertIn('jrc/free: rmse_range_m убывает с SNR', failed)
        self.assertIn('СКО дальности при 20 дБ', [
            item.name for item in check_mc(frame)
        ])

    def test_rician_and_parity(self):
        frame = pd.concat([
            mc_frame([0.4, 0.3, 0.2, 0.1, 0.1, 0.1]),
            mc_frame([0.8, 0.6, 0.4, 0.2, 0.2, 0.2], channel='rician'),
            mc_frame([0.4, 0.3, 0.2, 0.1, 0.1, 0.1], waveform='fmcw'),
            mc_frame([0.8, 0.6, 0.4, 0.2, 0.2, 0.2], channel='rician',
                     waveform='fmcw'),
        ], ignore_index=True)
        checks = check_mc(frame)
        names = [item.name for item in checks]
        self.assertIn('Райс не лучше свободного пространства', names)
        self.assertTrue(any(name.startswith('JRC/ЛЧМ') for name in names))
        self.assertTrue(all(item.passed for item in checks))


class SessionCheckTest(SimpleTestCase):
    def test_ber_delivery_times(self):
        frame = pd.DataFrame({
            't_s': [0.02, 0.08, 0.03],
            'protocol': ['jrc_v2', 'standard', 'jrc_v1'],
            'delivered': [True, True, True],
        })
        checks = check_ber(frame)
        self.assertEqual([item.passed for item in checks], [False, True])

    def test_throughput_table(self):
        rows = []
        rates = {
            ('tangential', 'free'): (0.34, 0.88, 0.883),
            ('radial', 'free'): (0.80, 0.84, 0.84),
        }
        for (trajectory, channel), values in rates.items():
            for protocol, value in zip(('standard', 'jrc_v1', 'jrc_v2'),
                                       values):
                rows.append({
                    'trajectory': trajectory, 'channel': channel,
                    'protocol': protocol, 'throughput_gbps': value,
                })
        checks = check_throughput(pd.DataFrame(rows))
        self.assertEqual(len(checks), 3)
        self.assertTrue(all(item.passed for item in checks))

    def test_missing_cells_skip(self):
        frame = pd.DataFrame({
            'trajectory': ['radial'], 'channel': ['rician'],
            'protocol': ['standard'], 'throughput_gbps': [np.nan],
        })
        self.assertEqual(check_throughput(frame), [])
