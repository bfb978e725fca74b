"""Одно- и двусторонние потери, фединг Райса и шум приёмника."""
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
from django.conf import settings
from scipy.constants import speed_of_light

from core.exceptions import ArgumentError, ConfigurationError
from core.utils import db_to_linear

logger = logging.getLogger(__name__)

NLOS_TAPS = 4


class ChannelKind(str, Enum):
    FREE_SPACE = 'free'
    RICIAN = 'rician'


@dataclass(frozen=True)
class ChannelModel:
    kind: ChannelKind = ChannelKind.FREE_SPACE
    rician_k_db: float = 7.0
    atmospheric_loss_db_per_km: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'kind', ChannelKind(self.kind))
        if not np.isfinite(self.rician_k_db):
            raise ConfigurationError('Коэффициент Райса должен быть конечным.')
        if self.atmospheric_loss_db_per_km < 0:
            raise ConfigurationError('Затухание в атмосфере отрицательно.')

    @classmethod
    def from_settings(cls, kind=ChannelKind.FREE_SPACE, **overrides):
        experiments = getattr(settings, 'EXPERIMENTS', {})
        values = {
            'rician_k_db': experiments.get('RICIAN_K_DB', 7.0),
            'atmospheric_loss_db_per_km': experiments.get(
                'ATMOSPHERIC_LOSS_DB_PER_KM', 0.0
            ),
        }
        values.update(overrides)
        return cls(kind=kind, **values)

    @property
    def is_rician(self):
        return self.kind is ChannelKind.RICIAN

    def loss_factor(self, distance):
        """Множитель мощности L_f для пути заданной длины."""
        loss_db = self.atmospheric_loss_db_per_km * distance / 1000.0
        return 10.0 ** (-loss_db / 10.0)

    def rician_split(self):
        """Доли амплитуды прямого и рассеянного лучей."""
        k = db_to_linear(self.rician_k_db)
        return np.sqrt(k / (k + 1)), np.sqrt(1 / (k + 1))


def _check_range(distance):
    if np.any(np.asarray(distance) <= 0):
        raise ArgumentError('Дальность должна быть положительной.')


def one_way_gain(distance, model, wavelength, bs_gain=1.0, mu_gain=1.0):
    """Комплексный коэффициент прямого пути BS-MU в свободном пространстве."""
    _check_range(distance)
    magnitude = np.sqrt(
        bs_gain * mu_gain * model.loss_factor(distance)
        * wavelength ** 2 / (4 * np.pi * distance) ** 2
    )
    return magnitude * np.exp(-2j * np.pi * distance / wavelength)


def two_way_gain(distance, model, wavelength, bs_gain=1.0):
    """Коэффициент пути BS-цель-BS на единицу корня из ЭПР."""
    _check_range(distance)
    magnitude = np.sqrt(
        bs_gain ** 2 * model.loss_factor(2 * distance) * wavelength ** 2
        / ((4 * np.pi) ** 3 * distance ** 4)
    )
    return magnitude * np.exp(-4j * np.pi * distance / wavelength)


def complex_normal(rng, size, variance=1.0):
    return np.sqrt(variance / 2) * (
        rng.standard_normal(size) + 1j * rng.standard_normal(size)
    )


def draw_nlos(rng, taps=NLOS_TAPS):
    """Отводы многолучевой составляющей с единичной суммарной мощностью."""
    return complex_normal(rng, taps, variance=1.0 / taps)


def rician_fading(model, rng, size):
    """Множители двустороннего пути: произведение двух одно-сторонних."""
    if not model.is_rician:
        return np.ones(size, dtype=complex)
    los, nlos = model.rician_split()
    first = los + nlos * complex_normal(rng, size)
    second = los + nlos * complex_normal(rng, size)
    return first * second


def add_noise(samples, noise_power, rng):
    """Круговой комплексный гауссов шум заданной мощности на отсчёт."""
    samples = np.asarray(samples, dtype=complex)
    if noise_power <= 0:
        return samples.copy()
    return samples + complex_normal(rng, samples.shape, noise_power)


def delay_samples(distance, sample_rate):
    return int(round(distance / speed_of_light * sample_rate))


def echo_delay_samples(distance, sample_rate):
    return int(round(2 * distance / speed_of_light * sample_rate))


def doppler_shift(radial_velocity, carrier_frequency):
    return 2 * radial_velocity * carrier_frequency / speed_of_light


def propagate_radar(
    waveform, scatterers, geometry, model, config, pulse, rng,
    window=None, noise_power=None, tx_weights=None, fading=None,
):
    """Эхо одного импульса на элементах BS: отсчёты × элементы.

    pulse: номер импульса внутри CPI, начиная с нуля. fading задаёт
    множители Райса формы (число рассеивателей, число элементов),
    одинаковые для всех импульсов CPI.
    """
    window = 2 * waveform.samples.size if window is None else window
    noise_power = config.noise_power_w if noise_power is None else noise_power
    tx_weights = (
        geometry.quasi_omni_weights() if tx_weights is None else tx_weights
    )
    received = np.zeros((window, geometry.n_elements), dtype=complex)
    amplitude = np.sqrt(config.radar_tx_power_w)
    outside = 0
    for index, item in enumerate(scatterers):
        if item.range_m >= config.max_unambiguous_range:
            logger.warning(
                'Рассеиватель на %.1f м за пределом однозначной дальности',
                item.range_m,
            )
            outside += 1
            continue
        delay = echo_delay_samples(item.range_m, waveform.sample_rate)
        if delay >= window:
            outside += 1
            continue
        steering = geometry.steering_vector(item.azimuth_deg)
        path = (
            item.amplitude * amplitude
            * (steering @ tx_weights)
            * two_way_gain(item.range_m, model, config.wavelength)
            * np.exp(
                -2j * np.pi * doppler_shift(
                    item.radial_velocity_mps, config.carrier_frequency
                ) * pulse * config.pulse_repetition_interval
            )
        )
        per_element = path * steering
        if fading is not None:
            per_element = per_element * fading[index]
        stop = min(window, delay + waveform.samples.size)
        received[delay:stop] += np.outer(
            waveform.samples[:stop - delay], per_element
        )
    if outside:
        logger.debug('Вне окна приёма: %d рассеивателей', outside)
    return add_noise(received, noise_power, rng)


def propagate_comm(
    samples, distance, theta_deg, phi_deg, bs_geometry, mu_geometry,
    bs_weights, mu_weights, model, config, rng, noise_power=None,
    nlos=None,
):
    """Сигнал на выходе аналоговой решётки MU для одного пакета.

    Прямой луч проходит через обе диаграммы; рассеянная составляющая
    свёртывается с отводами nlos и складывается после решёток.
    """
    samples = np.asarray(samples, dtype=complex)
    noise_power = config.noise_power_w if noise_power is None else noise_power
    path = one_way_gain(distance, model, config.wavelength) * np.sqrt(
        config.tx_power_w
    )
    beams = (
        mu_geometry.array_gain(mu_weights, phi_deg)
        * bs_geometry.array_gain(bs_weights, theta_deg)
    )
    los, scattered = model.rician_split() if model.is_rician else (1.0, 0.0)
    received = los * beams * path * samples
    if model.is_rician:
        nlos = draw_nlos(rng) if nlos is None else nlos
        received = received + scattered * np.abs(path) * np.convolve(
            samples, nlos
        )[:samples.size]
    delay = delay_samples(distance, config.ofdm_rate)
    received = np.concatenate([np.zeros(delay, dtype=complex), received])
    return add_noise(received, noise_power, rng)


def link_snr_db(distance, theta_deg, phi_deg, bs_geometry, mu_geometry,
                bs_weights, mu_weights, model, config):
    """Ожидаемое отношение сигнал/шум прямого луча по бюджету линии."""
    path = one_way_gain(distance, model, config.wavelength)
    beams = (
        mu_geometry.array_gain(mu_weights, phi_deg)
        * bs_geometry.array_gain(bs_weights, theta_deg)
    )
    power = config.tx_power_w * np.abs(path * beams) ** 2
    return float(10 * np.log10(power / config.noise_power_w))
