import numpy as np
from django.test import SimpleTestCase
from scipy.stats import norm

from channel.arrays import ArrayGeometry
from channel.propagation import ChannelModel, link_snr_db, propagate_comm
from comm.receiver import (
    cell_noise_var, demod_decode, equalize_mmse, estimate_channel,
    extract_cells, hard_decision, ofdm_demod, receive_packet, synchronize,
)
from core.exceptions import ArgumentError, FramingError
from core.tests.utils import colorize_msg, default_config, random_bits
from phy.ofdm import (
    DATA_BINS, DATA_SUBCARRIERS, FFT_SIZE, PILOT_SUBCARRIERS, PILOT_VALUES,
    q_matrix,
)
from phy.packet import build_packet, code_for


def noise(rng, size, variance):
    return np.sqrt(variance / 2) * (
        rng.standard_normal(size) + 1j * rng.standard_normal(size)
    )


def sample_noise_for(snr_db):
    """Дисперсия шума на отсчёт, дающая Es/N0 = snr_db в ячейке ДПФ."""
    return 1.0 / cell_noise_var(10 ** (snr_db / 10))


class OfdmDemodTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.config = default_config()
        cls.packet = build_packet('downlink', 10, 0, cls.config, seed=0)
        cls.start = cls.packet.boundaries['header'][0]

    def test_loopback_grid(self):
        """Без канала сетка совпадает с переданными символами."""
        grid = ofdm_demod(self.packet.samples[self.start:], 10)
        self.assertEqual(grid.shape, (11, FFT_SIZE))
        error = np.linalg.norm(grid - self.packet.grids)
        self.assertLess(error / np.linalg.norm(self.packet.grids), 1e-9)

    def test_flat_gain(self):
        gain = 0.3 - 0.8j
        grid = ofdm_demod(gain * self.packet.samples[self.start:], 10)
        np.testing.assert_allclose(grid, gain * self.packet.grids, atol=1e-9)

    def test_truncated(self):
        with self.assertRaises(FramingError):
            ofdm_demod(self.packet.samples[self.start:self.start + 1000], 10)

    def test_cells(self):
        grid = ofdm_demod(self.packet.samples[self.start:], 10)
        data, pilots = extract_cells(grid)
        self.assertEqual(data.shape, (11, 336))
        np.testing.assert_allclose(
            pilots, np.tile(PILOT_VALUES, (11, 1)), atol=1e-9
        )


class ChannelEstimateTest(SimpleTestCase):
    def test_flat_channel(self):
        gain = 2.0 * np.exp(0.7j)
        estimate = estimate_channel(gain * PILOT_VALUES)
        np.testing.assert_allclose(estimate, gain)
        self.assertEqual(estimate.size, DATA_SUBCARRIERS.size)

    def test_pure_delay(self):
        """Задержка на отсчёт: фазовый наклон внутри полосы пилотов."""
        def response(k):
            return np.exp(-2j * np.pi * k / FFT_SIZE)

        estimate = estimate_channel(
            PILOT_VALUES * response(PILOT_SUBCARRIERS)
        )
        inside = np.abs(DATA_SUBCARRIERS) <= PILOT_SUBCARRIERS.max()
        error = np.angle(
            estimate[inside] * np.conj(response(DATA_SUBCARRIERS[inside]))
        )
        self.assertLess(np.abs(error).max(), 1e-3)

    def test_two_taps(self):
        taps = {0: 1.0, 3: 0.5 * np.exp(0.3j)}

        def response(k):
            return sum(
                value * np.exp(-2j * np.pi * k * delay / FFT_SIZE)
                for delay, value in taps.items()
            )

        estimate = estimate_channel(
            PILOT_VALUES * response(PILOT_SUBCARRIERS)
        )
        spacing = np.diff(PILOT_SUBCARRIERS).max()
        curvature = sum(
            abs(value) * (2 * np.pi * delay / FFT_SIZE) ** 2
            for delay, value in taps.items()
        )
        bound = spacing ** 2 / 8 * curvature
        inside = np.abs(DATA_SUBCARRIERS) <= PILOT_SUBCARRIERS.max()
        error = np.abs(
            estimate[inside] - response(DATA_SUBCARRIERS[inside])
        )
        self.assertLessEqual(error.max(), bound)

    def test_averages_symbols(self):
        pilots = np.stack([PILOT_VALUES * 1.0, PILOT_VALUES * 3.0])
        np.testing.assert_allclose(estimate_channel(pilots), 2.0)


class EqualizerTest(SimpleTestCase):
    def test_noiseless_flat(self):
        rng = np.random.default_rng(1)
        symbols = hard_decision(noise(rng, (4, 336), 1.0))
        gain = 0.4 + 1.1j
        equalized = equalize_mmse(gain * symbols, gain, 0.0)
        np.testing.assert_allclose(equalized.values, symbols)

    def test_zero_forcing_limit(self):
        rng = np.random.default_rng(2)
        cells = noise(rng, (2, 336), 1.0)
        channel = noise(rng, 336, 1.0)
        equalized = equalize_mmse(cells, channel, 0.0)
        np.testing.assert_allclose(equalized.values, cells / channel)

    def test_erased_cells(self):
        channel = np.ones(336, dtype=complex)
        channel[7] = 0
        with self.assertLogs('comm.receiver', level='WARNING'):
            equalized = equalize_mmse(np.ones((1, 336)), channel, 0.0)
        self.assertTrue(equalized.erased[0, 7])
        self.assertEqual(int(equalized.erased.sum()), 1)
        self.assertEqual(equalized.values[0, 7], 0)

    def test_negative_noise(self):
        with self.assertRaises(ArgumentError):
            equalize_mmse(np.ones((1, 336)), 1.0, -1.0)

    def test_symbol_error_rate(self):
        """SER QPSK при 10 дБ в пределах 10% от аналитической формулы."""
        rng = np.random.default_rng(3)
        snr = 10.0
        symbols = hard_decision(noise(rng, 10 ** 6, 1.0))
        gain = 0.7 * np.exp(0.4j)
        variance = abs(gain) ** 2 / 10 ** (snr / 10)
        cells = gain * symbols + noise(rng, symbols.size, variance)
        equalized = equalize_mmse(cells, gain, variance)
        errors = np.mean(hard_decision(equalized.values) != symbols)
        bit_error = norm.sf(np.sqrt(10 ** (snr / 10)))
        expected = 1 - (1 - bit_error) ** 2
        self.assertLess(
            abs(errors - expected) / expected, 0.1,
            colorize_msg(f'SER {errors:.2e}, ожидалось {expected:.2e}'),
        )

    def test_mmse_not_worse_than_zero_forcing(self):
        rng = np.random.default_rng(4)
        variance = 0.5
        better = []
        for _ in range(1000):
            channel = noise(rng, 1, 1.0)
            symbols = hard_decision(noise(rng, 200, 1.0))
            cells = channel * symbols + noise(rng, 200, variance)
            mmse = equalize_mmse(cells, channel, variance).values[0]
            forcing = cells / channel
            better.append(
                np.mean(np.abs(mmse - symbols) ** 2)
                <= np.mean(np.abs(forcing - symbols) ** 2)
            )
        self.assertGreater(np.mean(better), 0.95)


class DecodeTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.config = default_config()
        cls.code = code_for(cls.config)

    def test_loopback(self):
        """Идеальный канал: BER = 0 для любой длины полезной нагрузки."""
        for size in (1, 2, 503, 504, 505, 1007, 2520, 5039, 5040):
            with self.subTest(size=size):
                bits = random_bits(size, seed=size)
                n_sym = max(1, -(-size // 504))
                packet = build_packet(
                    'downlink', n_sym, 0, self.config, payload_bits=bits
                )
                payload = receive_packet(
                    packet.samples, packet, self.config, noise_var=0.0,
                    offset=0,
                )
                self.assertEqual(payload.ber, 0.0)
                np.testing.assert_array_equal(payload.bits, bits)
                self.assertTrue(payload.header_ok)
                self.assertTrue(payload.parity_ok)
                self.assertEqual(payload.header.payload_length, size)

    def test_single_coded_bit_flip(self):
        packet = build_packet('downlink', 2, 0, self.config)
        key = packet.scrambler_init
        derotated = packet.grids[1:, DATA_BINS] * np.conj(q_matrix(key))
        derotated[1, 40] = -derotated[1, 40].real + 1j * derotated[1, 40].imag
        cells = derotated * q_matrix(key)
        payload = demod_decode(
            equalize_mmse(cells, 1.0, 0.05), key, packet.payload_bits.size,
            self.code, reference_bits=packet.payload_bits,
        )
        self.assertEqual(payload.ber, 0.0)
        self.assertEqual(len(payload.per_symbol_evm), 2)
        np.testing.assert_allclose(payload.per_symbol_evm, 0.0, atol=1e-9)

    def test_waterfall(self):
        """BER после декодера убывает с ростом SNR."""
        rng = np.random.default_rng(5)
        results = []
        for snr_db in (2, 4, 6, 8):
            errors = []
            for _ in range(8):
                packet = build_packet('downlink', 10, 0, self.config, rng=rng)
                variance = sample_noise_for(snr_db)
                rx = packet.samples + noise(rng, packet.samples.size, variance)
                errors.append(receive_packet(
                    rx, packet, self.config, noise_var=variance, offset=0
                ).ber)
            results.append(np.mean(errors))
        self.assertGreater(results[0], 0, colorize_msg(f'{results}'))
        for low, high in zip(results, results[1:]):
            if low > 0:
                self.assertLess(high, low, colorize_msg(f'{results}'))
            else:
                self.assertEqual(high, 0.0)

    def test_scrambler_key_does_not_matter(self):
        rng = np.random.default_rng(6)
        bits = random_bits(5040, seed=6)
        variance = sample_noise_for(10)
        impairment = None
        for key in (1, 33, 64, 127):
            with self.subTest(key=key):
                packet = build_packet(
                    'downlink', 10, 0, self.config, payload_bits=bits,
                    scrambler_init=key,
                )
                if impairment is None:
                    impairment = noise(rng, packet.samples.size, variance)
                payload = receive_packet(
                    packet.samples + impairment, packet, self.config,
                    noise_var=variance, offset=0,
                )
                self.assertEqual(payload.ber, 0.0)
                self.assertEqual(payload.header.scrambler_init, key)

    def test_reference_length_mismatch(self):
        packet = build_packet('downlink', 1, 0, self.config)
        cells = packet.grids[1:, DATA_BINS]
        with self.assertRaises(ArgumentError):
            demod_decode(
                equalize_mmse(cells, 1.0, 0.0), packet.scrambler_init, 504,
                self.code, reference_bits=np.zeros(10, np.uint8),
            )


class LinkTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.config = default_config(noise_floor_dbm=-300.0)
        cls.bs = ArrayGeometry.for_bs(cls.config)
        cls.mu = ArrayGeometry.for_mu(cls.config)

    def test_synchronization(self):
        packet = build_packet('uplink', 1, 0, self.config)
        rng = np.random.default_rng(7)
        for delay in (0, 88, 300):
            with self.subTest(delay=delay):
                rx = np.concatenate([np.zeros(delay), packet.samples])
                rx = rx + noise(rng, rx.size, 0.01)
                self.assertEqual(synchronize(rx, self.config), delay)

    def test_short_stream(self):
        with self.assertRaises(FramingError):
            synchronize(np.zeros(100), self.config)

    def test_directional_link(self):
        """Пакет через канал на 10 м без шума принимается без ошибок."""
        packet = build_packet('downlink', 10, 0, self.config)
        rx = propagate_comm(
            packet.samples, 10.0, 20.0, 0.0, self.bs, self.mu,
            self.bs.directional_weights(20.0),
            self.mu.quasi_omni_weights(),
            ChannelModel(), self.config, np.random.default_rng(8),
        )
        payload = receive_packet(rx, packet, self.config)
        self.assertEqual(payload.ber, 0.0)
        self.assertTrue(payload.header_ok)

    def test_measured_snr(self):
        """SNR по оценке канала совпадает с бюджетом линии."""
        config = default_config()
        packet = build_packet('downlink', 10, 0, config)
        weights = self.bs.directional_weights(20.0)
        rx = propagate_comm(
            packet.samples, 10.0, 20.0, 0.0, self.bs, self.mu, weights,
            self.mu.quasi_omni_weights(), ChannelModel(), config,
            np.random.default_rng(9),
        )
        payload = receive_packet(rx, packet, config, offset=88)
        expected = link_snr_db(
            10.0, 20.0, 0.0, self.bs, self.mu, weights,
            self.mu.quasi_omni_weights(), ChannelModel(), config,
        ) + 10 * np.log10(512 / 352)
        self.assertAlmostEqual(payload.snr_db, expected, delta=0.5)
        self.assertEqual(payload.ber, 0.0)
