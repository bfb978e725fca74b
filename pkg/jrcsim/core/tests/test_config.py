from django.test import SimpleTestCase, override_settings

from core.config import ProcessingTimes, SystemConfig
from core.exceptions import ConfigurationError
from core.utils import config_hash, trial_rng
from .utils import colorize_msg


class SystemConfigTest(SimpleTestCase):
    def test_defaults_follow_rate_relation(self):
        """Частота OFDM в полтора раза выше чиповой."""
        config = SystemConfig()
        self.assertAlmostEqual(
            config.ofdm_rate / config.chip_rate, 1.5,
            msg=colorize_msg('Нарушено соотношение частот.'),
        )
        self.assertAlmostEqual(config.range_bin_m, 0.08517, places=4)
        self.assertAlmostEqual(config.radar_duration * 1e6, 0.2909, places=3)

    def test_invalid_values_rejected(self):
        """Недопустимые параметры вызывают ConfigurationError."""
        cases = {
            'чётный фильтр': {'filter_taps': 32},
            'частоты': {'ofdm_rate': 2.0e9},
            'скважность': {'pulse_repetition_interval': 0.4e-6},
            'один импульс': {'pulses': 1},
            'БПФ': {'azimuth_fft': 16},
            'порог': {'clean_threshold': 1.5},
        }
        for name, overrides in cases.items():
            with self.subTest(case=name):
                with self.assertRaises(
                    ConfigurationError,
                    msg=colorize_msg(f'Не отклонён случай: {name}'),
                ):
                    SystemConfig(**overrides)

    def test_negative_processing_time_rejected(self):
        with self.assertRaises(ConfigurationError):
            ProcessingTimes(rsp=-1.0)

    @override_settings(JRC_SIMULATION={
        'PULSES': 3, 'PROCESSING_TIMES': {'rsp': 8e-3},
    })
    def test_from_settings_reads_dict(self):
        """Конфигурация собирается из settings."""
        config = SystemConfig.from_settings(bs_elements=16)
        self.assertEqual(config.pulses, 3)
        self.assertEqual(config.bs_elements, 16)
        self.assertEqual(config.processing_times.rsp, 8e-3)
        self.assertEqual(config.processing_times.rcp_dl, 16e-3)

    def test_unknown_key_rejected(self):
        with self.assertRaises(ConfigurationError):
            SystemConfig.from_dict({'warp_factor': 9})


class UtilsTest(SimpleTestCase):
    def test_config_hash_is_canonical(self):
        """Хэш не зависит от порядка ключей."""
        first = config_hash({'a': 1, 'b': [1, 2]})
        second = config_hash({'b': [1, 2], 'a': 1})
        self.assertEqual(first, second, colorize_msg('Хэш нестабилен.'))
        self.assertNotEqual(first, config_hash({'a': 2, 'b': [1, 2]}))

    def test_trial_rng_is_order_independent(self):
        """Генератор испытания зависит только от ключей."""
        late = [trial_rng(7, 1, k).random() for k in (3, 2, 1)][::-1]
        early = [trial_rng(7, 1, k).random() for k in (1, 2, 3)]
        self.assertEqual(late, early)
