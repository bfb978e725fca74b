import json
import shutil
import tempfile
from io import StringIO
from pathlib import Path

import pandas as pd
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase

from experiments.models import ExperimentRun
from phy.packet import read_packet


class CommandTest(TestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.directory = Path(tempfile.mkdtemp())

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls.directory, ignore_errors=True)
        super().tearDownClass()

    def config_file(self, name, document):
        path = self.directory / name
        path.write_text(json.dumps(document))
        return str(path)

    def call(self, name, *args, **options):
        out = self.directory / name
        call_command(name, *args, out=str(out), stdout=StringIO(), **options)
        return out

    def test_timing(self):
        out = self.call('timing', check=True)
        self.assertTrue((out / 'timing.csv').exists())
        self.assertIn('jrc_v2', (out / 'timing.txt').read_text())
        run = ExperimentRun.objects.get(kind='timing')
        self.assertTrue(run.checks_passed)
        self.assertAlmostEqual(
            run.summary['stage1_ms']['standard'], 80.1, delta=0.8
        )
        self.assertEqual(len(run.config_hash), 16)

    def test_failed_check_exits_nonzero(self):
        path = self.config_file('slow.json', {
            'system': {'processing_times': {'rsp': 0.05}},
        })
        with self.assertRaises(CommandError):
            self.call('timing', config=path, check=True)
        self.assertFalse(ExperimentRun.objects.get().checks_passed)

    def test_bad_config(self):
        path = self.config_file('bad.json', {'experiment': {'trials': 0}})
        with self.assertRaises(CommandError):
            self.call('timing', config=path)
        self.assertFalse(ExperimentRun.objects.exists())

    def test_mc_rmse(self):
        path = self.config_file('mc.json', {
            'experiment': {'snr_grid_db': [20]},
        })
        out = self.call(
            'mc_rmse', config=path, trials=2, seed=5, waveform=['jrc'],
        )
        frame = pd.read_csv(
            out / 'mc_point.csv', dtype={'config_hash': str}
        )
        self.assertEqual(len(frame), 1)
        self.assertEqual(frame.loc[0, 'trials'], 2)
        self.assertTrue((out / 'mc_point.png').exists())
        run = ExperimentRun.objects.get(kind='mc_rmse')
        self.assertEqual(run.seed, 5)
        self.assertEqual(run.config_hash, frame.loc[0, 'config_hash'])

    def test_ber_session(self):
        path = self.config_file('ber.json', {
            'experiment': {'protocols': ['standard', 'jrc_v2']},
        })
        out = self.call(
            'ber_session', config=path, duration=0.032, interval=5e-3,
        )
        frame = pd.read_csv(out / 'ber_tangential.csv')
        self.assertEqual(set(frame['protocol']), {'standard', 'jrc_v2'})
        self.assertEqual(len(frame), 14)
        truth = pd.read_csv(out / 'tangential_truth.csv')
        self.assertEqual(len(truth), 7)

    def test_throughput(self):
        out = self.call(
            'throughput', duration=0.03, interval=5e-3,
            trajectory=['tangential'], channel=['free'],
        )
        table = pd.read_csv(out / 'throughput.csv')
        self.assertEqual(len(table), 3)
        self.assertTrue((table['throughput_gbps'] >= 0).all())
        self.assertEqual(ExperimentRun.objects.get().channel, 'free')

    def test_packet_dump(self):
        out = self.call('packet_dump', ambiguity=True, n_sym=2, brf=1)
        packet = read_packet(out / 'downlink_2_1')
        self.assertEqual(packet.n_sym, 2)
        detections = pd.read_csv(out / 'detections.csv')
        self.assertEqual(len(detections), 1)
        self.assertAlmostEqual(detections.loc[0, 'range_m'], 20.0, delta=0.2)
        self.assertTrue((out / 'ambiguity.png').exists())
        self.assertEqual(
            len(pd.read_csv(out / 'ambiguity.csv')), 512 * 256
        )
