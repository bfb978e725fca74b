"""Куб радарных данных, карта неоднозначности и результаты обнаружения."""
import logging
from dataclasses import dataclass, field, replace

import numpy as np
import pandas as pd

from channel.arrays import ArrayGeometry
from channel.propagation import propagate_radar, rician_fading
from phy.preamble import build_radar_waveform
from phy.rate import filter_for, rate_convert_ofdm_to_sc
from scene.sampling import as_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RadarDataCube:
    """Отсчёты: быстрое время × импульс × элемент приёмной решётки."""

    samples: np.ndarray
    sample_rate: float
    seeds: tuple
    beyond_window: int = 0

    @property
    def fast_time(self):
        return self.samples.shape[0]

    @property
    def pulses(self):
        return self.samples.shape[1]

    @property
    def elements(self):
        return self.samples.shape[2]

    def pulse(self, index):
        return self.samples[:, index, :]

    def downsample(self, taps, chip_rate):
        """Перевод быстрого времени с 2.64 ГГц на 1.76 ГГц."""
        if np.isclose(self.sample_rate, chip_rate):
            return self
        return replace(
            self,
            samples=rate_convert_ofdm_to_sc(self.samples, taps, axis=0),
            sample_rate=chip_rate,
        )


@dataclass(frozen=True)
class AmbiguityMap:
    """Комплексная карта дальность × азимут одного импульса.

    source и processor заданы, если карта построена из куба: по ним
    доплер уточняется на исходной частоте отсчётов.
    """

    values: np.ndarray
    range_bin_m: float
    spacing: float
    pulse: int = 0
    seed: int = None
    source: object = field(default=None, repr=False, compare=False)
    processor: object = field(default=None, repr=False, compare=False)

    @property
    def shape(self):
        return self.values.shape

    @property
    def n_fft(self):
        return self.values.shape[1]

    @property
    def ranges_m(self):
        return np.arange(self.values.shape[0]) * self.range_bin_m

    def azimuth_of(self, azimuth_bin):
        """Азимут дробного бина; бины выше N/2 соответствуют sin < 0."""
        signed = (np.asarray(azimuth_bin, float) + self.n_fft / 2) % (
            self.n_fft
        ) - self.n_fft / 2
        sine = signed / self.n_fft / self.spacing
        return np.degrees(np.arcsin(np.clip(sine, -1.0, 1.0)))

    @property
    def azimuths_deg(self):
        return self.azimuth_of(np.arange(self.n_fft))

    def azimuth_bin(self, azimuth_deg):
        """Ближайший бин ДПФ для заданного азимута."""
        position = self.n_fft * self.spacing * np.sin(np.radians(azimuth_deg))
        return int(np.round(position)) % self.n_fft

    def magnitude_db(self, floor=1e-30):
        return 20 * np.log10(np.maximum(np.abs(self.values), floor))

    def to_frame(self):
        """Длинная таблица для CSV: дальность, азимут, модуль в дБ."""
        order = np.argsort(self.azimuths_deg, kind='stable')
        ranges, azimuths = np.meshgrid(
            self.ranges_m, self.azimuths_deg[order], indexing='ij'
        )
        return pd.DataFrame({
            'range_m': ranges.ravel(),
            'azimuth_deg': azimuths.ravel(),
            'magnitude_db': self.magnitude_db()[:, order].ravel(),
        })


@dataclass(frozen=True)
class Extraction:
    """Один шаг CLEAN: амплитуда и ячейка карты."""

    amplitude: complex
    range_bin: int
    azimuth_bin: int
    range_m: float
    azimuth_deg: float


@dataclass(frozen=True)
class Detection:
    range_m: float
    azimuth_deg: float
    amplitude: complex
    doppler_hz: float = float('nan')
    radial_velocity_mps: float = float('nan')
    is_dynamic: bool = False
    cluster_members: int = 1
    range_bin: int = 0
    azimuth_bin: int = 0
    reliable: bool = True

    def as_row(self):
        return {
            'range_m': self.range_m,
            'azimuth_deg': self.azimuth_deg,
            'magnitude': abs(self.amplitude),
            'doppler_hz': self.doppler_hz,
            'radial_velocity_mps': self.radial_velocity_mps,
            'is_dynamic': self.is_dynamic,
            'cluster_members': self.cluster_members,
            'reliable': self.reliable,
        }


def detections_frame(detections):
    columns = list(Detection(0.0, 0.0, 0j).as_row())
    return pd.DataFrame(
        [item.as_row() for item in detections], columns=columns
    )


def simulate_radar_cube(
    scatterers, config, model, rng_seed, noise_power=None, waveforms=None,
    geometry=None,
):
    """Эхо P импульсов CPI; множители Райса общие для всех импульсов."""
    rng = as_rng(rng_seed)
    geometry = geometry or ArrayGeometry.for_bs(config)
    if waveforms is None:
        taps = filter_for(config)
        waveforms = [
            build_radar_waveform(p, taps, config.ofdm_rate)
            for p in range(1, config.pulses + 1)
        ]
    fading = None
    if model.is_rician:
        fading = rician_fading(
            model, rng, (len(scatterers), geometry.n_elements)
        )
    window = 2 * waveforms[0].samples.size
    pulses = [
        propagate_radar(
            waveform, scatterers, geometry, model, config, index, rng,
            window=window, noise_power=noise_power, fading=fading,
        )
        for index, waveform in enumerate(waveforms)
    ]
    beyond = sum(
        item.range_m >= config.max_unambiguous_range for item in scatterers
    )
    return RadarDataCube(
        samples=np.stack(pulses, axis=1),
        sample_rate=waveforms[0].sample_rate,
        seeds=tuple(waveform.seed for waveform in waveforms),
        beyond_window=int(beyond),
    )
