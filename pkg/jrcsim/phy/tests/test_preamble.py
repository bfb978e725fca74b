import numpy as np
from django.test import SimpleTestCase

from core.exceptions import ArgumentError, ConfigurationError
from core.tests.utils import colorize_msg, default_config
from phy.preamble import (
    CEF_CHIPS, PREAMBLE_CHIPS, PREAMBLE_SAMPLES, STF_CHIPS, build_brf,
    build_cef, build_preamble, build_radar_waveform, build_stf,
    extract_radar_waveform, radar_reference, rotation,
)
from phy.rate import (
    design_filter, filter_for, passband_gain, rate_convert_ofdm_to_sc,
    rate_convert_sc_to_ofdm,
)
from sequences.golay import golay_set


class PreambleFieldsTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.config = default_config()
        cls.taps = filter_for(cls.config)

    def test_stf_structure(self):
        """STF: 16 повторов Ga128 и один инвертированный."""
        stf = build_stf()
        ga128 = golay_set(0).ga128
        self.assertEqual(stf.size, STF_CHIPS)
        self.assertEqual(stf[0], ga128[0])
        self.assertTrue(np.allclose(np.abs(stf), 1.0))
        derotated = stf / rotation(STF_CHIPS)
        self.assertTrue(np.allclose(derotated[:128], ga128))
        self.assertTrue(np.allclose(derotated[-128:], -ga128))

    def test_cef_structure(self):
        """CEF: Gu512, Gv512, Gv128; начало CEF совпадает с Gu512."""
        cef = build_cef()
        self.assertEqual(cef.size, CEF_CHIPS)
        derotated = cef[:512] / rotation(512)
        peak = np.correlate(derotated, golay_set(0).gu512.astype(complex))
        self.assertAlmostEqual(abs(peak[0]), 512.0)

    def test_preamble_length_and_duration(self):
        """Преамбула: 4992 отсчёта, 1.89 мкс."""
        for seed in (0, 1, 2, 5):
            with self.subTest(seed=seed):
                preamble = build_preamble(self.taps, seed=seed)
                self.assertEqual(
                    preamble.size, PREAMBLE_SAMPLES,
                    colorize_msg(f'Длина преамбулы {preamble.size}.'),
                )
        duration = PREAMBLE_SAMPLES / self.config.ofdm_rate
        self.assertAlmostEqual(duration * 1e6, 1.89, delta=1.89e-3)
        self.assertEqual(PREAMBLE_CHIPS * 3 // 2, PREAMBLE_SAMPLES)

    def test_radar_waveform(self):
        """Радарный импульс: 768 отсчётов, 0.29 мкс, разные seed."""
        first = build_radar_waveform(1, self.taps, self.config.ofdm_rate)
        second = build_radar_waveform(2, self.taps, self.config.ofdm_rate)
        self.assertEqual(first.samples.size, 768)
        self.assertAlmostEqual(first.duration * 1e6, 0.2909, places=3)
        self.assertEqual(first.seed, 1)
        self.assertFalse(np.allclose(first.samples, second.samples))

    def test_radar_waveform_matches_reference(self):
        """Импульс после понижения частоты совпадает с опорой приёмника."""
        waveform = build_radar_waveform(3, self.taps, self.config.ofdm_rate)
        chips = rate_convert_ofdm_to_sc(waveform.samples, self.taps)
        reference = radar_reference(3)
        score = abs(np.vdot(reference, chips[:512])) / (
            np.linalg.norm(reference) * np.linalg.norm(chips[:512])
        )
        self.assertGreater(score, 0.9)

    def test_wrong_preamble_length(self):
        with self.assertRaises(ArgumentError):
            extract_radar_waveform(np.zeros(100), 1, self.config.ofdm_rate)


class RateConversionTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.config = default_config()
        cls.taps = filter_for(cls.config)

    def test_output_length(self):
        for size in (3328, 3329, 1, 512):
            with self.subTest(size=size):
                out = rate_convert_sc_to_ofdm(np.ones(size), self.taps)
                self.assertEqual(out.size, int(np.ceil(1.5 * size)))

    def test_even_taps_rejected(self):
        with self.assertRaises(ConfigurationError):
            design_filter(32, 0.88e9, 1.76e9)

    def test_impulse_stays_in_place(self):
        """Задержка фильтра скомпенсирована."""
        impulse = np.zeros(64)
        impulse[10] = 1.0
        out = rate_convert_sc_to_ofdm(impulse, self.taps)
        self.assertEqual(int(np.argmax(np.abs(out))), 15)

    def test_tone_passes_with_filter_gain(self):
        """Тон 100 МГц проходит с коэффициентом фильтра в пределах 0.1 дБ."""
        n = np.arange(4096)
        tone = np.exp(2j * np.pi * 100e6 * n / self.config.chip_rate)
        out = rate_convert_sc_to_ofdm(tone, self.taps)
        steady = np.abs(out[200:-200])
        expected = passband_gain(self.taps, 100e6, self.config.chip_rate)
        ratio_db = 20 * np.log10(np.mean(steady) / expected)
        self.assertLess(abs(ratio_db), 0.1)


class BrfTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.config = default_config()
        cls.taps = filter_for(cls.config)

    def test_durations(self):
        """Длительность BRF близка к 2.845 мкс на каждые 4 поля."""
        for fields in (4, 32):
            with self.subTest(fields=fields):
                brf = build_brf(fields, self.taps)
                duration = brf.samples.size / self.config.ofdm_rate
                expected = 2.845e-6 * fields / 4
                self.assertLess(abs(duration - expected) / expected, 0.02)
                self.assertEqual(len(brf.trn_ranges), fields)
                self.assertEqual(brf.field_count, fields)

    def test_empty_brf(self):
        self.assertEqual(build_brf(0, self.taps).samples.size, 0)

    def test_invalid_field_count(self):
        for fields in (3, 68, -4):
            with self.subTest(fields=fields):
                with self.assertRaises(ConfigurationError):
                    build_brf(fields, self.taps)
