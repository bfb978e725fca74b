import numpy as np
from django.test import SimpleTestCase

from core.tests.utils import default_config
from radar.fmcw import FmcwBaseline, FmcwProcessor, fmcw_range_process
from radar.processing import detect_targets
from radar.tests.utils import noiseless_cube
from scene.sampling import ScatterSample


class FmcwBaselineTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.config = default_config()
        cls.baseline = FmcwBaseline.from_config(cls.config)

    def test_parameters(self):
        self.assertAlmostEqual(self.baseline.duration, 768 / 2.64e9)
        self.assertAlmostEqual(
            self.baseline.bandwidth / 1e6, 174.55, places=1
        )
        self.assertAlmostEqual(self.baseline.range_bin_m, 0.0806, places=4)

    def test_beat_frequency(self):
        """Цель на 30 м даёт биения 120 МГц."""
        self.assertAlmostEqual(
            self.baseline.beat_frequency(30.0) / 1e6, 120.08, places=1
        )

    def test_waveforms_have_no_seed(self):
        waveforms = self.baseline.waveforms()
        self.assertEqual(len(waveforms), self.config.pulses)
        for waveform in waveforms:
            self.assertIsNone(waveform.seed)
            self.assertEqual(waveform.samples.size, 768)
            np.testing.assert_allclose(np.abs(waveform.samples), 1.0)


class FmcwProcessingTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.config = default_config()
        cls.processor = FmcwProcessor(cls.config)
        cls.waveforms = FmcwBaseline.from_config(cls.config).waveforms()

    def _cube(self, scatterers):
        return noiseless_cube(self.config, scatterers, self.waveforms)

    def test_map_covers_same_range(self):
        amap = fmcw_range_process(self._cube([]), self.config)
        self.assertEqual(amap.shape, (self.processor.n_bins, 256))
        self.assertAlmostEqual(
            amap.ranges_m[-1], 512 * self.config.range_bin_m, delta=0.1
        )

    def test_peak_at_beat_bin(self):
        amap = fmcw_range_process(
            self._cube([ScatterSample(30.0, 0.0, 0.0, 1.0)]), self.config
        )
        peak = np.unravel_index(np.argmax(np.abs(amap.values)), amap.shape)
        self.assertAlmostEqual(
            int(peak[0]), 30.0 / self.processor.range_bin_m, delta=1.0
        )
        self.assertEqual(int(peak[1]), 0)

    def test_doppler(self):
        """Неподвижная цель без доплера, движущаяся с точностью до 1 Гц."""
        for velocity in (0.0, 10.0, -20.0):
            with self.subTest(velocity=velocity):
                cube = self._cube(
                    [ScatterSample(30.0, 10.0, velocity, 1.0)]
                )
                detections = detect_targets(
                    cube, self.config, processor=self.processor
                )
                self.assertEqual(len(detections), 1)
                expected = 2 * velocity * 60e9 / 299792458.0
                self.assertAlmostEqual(
                    detections[0].doppler_hz, expected, delta=1.0
                )
                self.assertAlmostEqual(
                    detections[0].range_m, 30.0, delta=0.2
                )
