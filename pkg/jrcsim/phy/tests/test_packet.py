import shutil
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from core.tests.utils import colorize_msg, default_config, random_bits
from phy.ofdm import CYCLIC_PREFIX, ENERGY_SCALE, SYMBOL_SAMPLES
from phy.packet import (
    PacketKind, build_packet, packet_duration, read_packet, write_packet,
)
from phy.preamble import PREAMBLE_SAMPLES


class PacketTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.config = default_config()

    def test_standard_downlink_duration(self):
        """DL с 20 символами и 32 полями BRF длится около 29.73 мкс."""
        packet = build_packet('downlink', 20, 32, self.config, seed=0)
        self.assertLess(
            abs(packet.duration_seconds - 29.73e-6) / 29.73e-6, 0.02,
            colorize_msg(f'Длительность {packet.duration_seconds * 1e6:.2f}'),
        )
        self.assertEqual(packet.kind, PacketKind.DOWNLINK)
        self.assertEqual(len(packet.trn_ranges), 32)

    def test_jrc_downlink_duration(self):
        """DL без BRF с 10 символами длится около 4.5 мкс."""
        packet = build_packet('downlink', 10, 0, self.config)
        self.assertLess(abs(packet.duration_seconds - 4.5e-6) / 4.5e-6, 0.03)
        self.assertAlmostEqual(
            packet.duration_seconds, packet_duration(10, 0, self.config)
        )

    def test_duration_is_affine(self):
        for n_sym, brf in ((1, 0), (5, 4), (12, 16), (20, 64)):
            with self.subTest(n_sym=n_sym, brf=brf):
                expected = (
                    1.89e-6 + (n_sym + 1) * 640 / self.config.ofdm_rate
                    + 2.845e-6 * brf / 4
                )
                actual = packet_duration(n_sym, brf, self.config)
                self.assertLess(abs(actual - expected) / expected, 0.02)

    def test_boundaries_partition_packet(self):
        """Основные поля покрывают пакет без пропусков и наложений."""
        packet = build_packet('uplink', 3, 8, self.config)
        position = 0
        for name in ('stf', 'cef', 'header', 'data', 'brf'):
            start, stop = packet.boundaries[name]
            self.assertEqual(start, position, colorize_msg(f'Разрыв {name}'))
            position = stop
        self.assertEqual(position, packet.samples.size)
        self.assertEqual(packet.preamble.size, PREAMBLE_SAMPLES)

    def test_data_body_is_untouched_by_wola(self):
        """Тело каждого символа совпадает с ОБПФ переданной сетки."""
        packet = build_packet('downlink', 2, 0, self.config)
        start = packet.boundaries['header'][0]
        for index, grid in enumerate(packet.grids):
            body_start = start + index * SYMBOL_SAMPLES + CYCLIC_PREFIX
            body = packet.samples[body_start:body_start + 512]
            expected = np.fft.ifft(grid, norm='ortho') * ENERGY_SCALE
            self.assertTrue(np.allclose(body, expected, atol=1e-12))

    def test_payload_is_padded(self):
        bits = random_bits(700)
        packet = build_packet(
            'downlink', 2, 0, self.config, payload_bits=bits,
            scrambler_init=0b1111111,
        )
        self.assertEqual(packet.n_sym, 2)
        self.assertEqual(packet.payload_bits.size, 700)


class PacketFileTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.directory = Path(tempfile.mkdtemp())

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls.directory, ignore_errors=True)
        super().tearDownClass()

    def test_write_and_read(self):
        """I/Q-файл и описание восстанавливают пакет."""
        packet = build_packet('downlink', 1, 4, default_config(), seed=2)
        iq_path, json_path = write_packet(packet, self.directory / 'dl')
        self.assertTrue(iq_path.exists())
        self.assertTrue(json_path.exists())
        restored = read_packet(self.directory / 'dl')
        self.assertEqual(restored.boundaries, packet.boundaries)
        self.assertEqual(restored.brf_count, 4)
        self.assertTrue(
            np.allclose(restored.samples, packet.samples, atol=1e-6)
        )
        self.assertTrue(
            np.array_equal(restored.payload_bits, packet.payload_bits)
        )
