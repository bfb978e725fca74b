"""ЛЧМ-радар сравнения с той же решёткой, частотой и периодом импульсов."""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.constants import speed_of_light

from core.config import RADAR_WAVEFORM_SAMPLES
from phy.preamble import RadarWaveform
from radar.processing import RangeProcessor


@dataclass(frozen=True)
class FmcwBaseline:
    chirp_slope: float
    carrier_frequency: float
    sample_rate: float
    pulse_repetition_interval: float
    pulses: int
    samples: int = RADAR_WAVEFORM_SAMPLES
    n_fft: int = 8192

    @classmethod
    def from_config(cls, config):
        return cls(
            chirp_slope=config.fmcw_slope,
            carrier_frequency=config.carrier_frequency,
            sample_rate=config.ofdm_rate,
            pulse_repetition_interval=config.pulse_repetition_interval,
            pulses=config.pulses,
            n_fft=config.fmcw_fft,
        )

    @property
    def duration(self):
        return self.samples / self.sample_rate

    @property
    def bandwidth(self):
        return self.chirp_slope * self.duration

    @property
    def range_bin_m(self):
        """Шаг дальности одного бина БПФ биений."""
        return speed_of_light * self.sample_rate / (
            2 * self.n_fft * self.chirp_slope
        )

    def beat_frequency(self, distance):
        return self.chirp_slope * 2 * distance / speed_of_light

    def waveforms(self):
        samples = chirp(self, self.samples)
        return [
            RadarWaveform(
                samples=samples, pulse_index=pulse, seed=None,
                sample_rate=self.sample_rate,
            )
            for pulse in range(1, self.pulses + 1)
        ]


def chirp(baseline, length):
    t = np.arange(length) / baseline.sample_rate
    return np.exp(1j * np.pi * baseline.chirp_slope * t ** 2)


def dechirp(samples, baseline, n_bins):
    """Умножение на сопряжённую опорную ЛЧМ и БПФ по быстрому времени."""
    samples = np.asarray(samples, dtype=complex)
    reference = np.conj(chirp(baseline, samples.shape[0]))
    if samples.ndim > 1:
        reference = reference[:, np.newaxis]
    spectrum = baseline.n_fft * np.fft.ifft(
        samples * reference, n=baseline.n_fft, axis=0
    )
    return spectrum[:n_bins]


@lru_cache(maxsize=2048)
def _fmcw_unit_profile(baseline, delay, n_bins, window):
    echo = np.zeros(window, dtype=complex)
    stop = min(window, delay + baseline.samples)
    echo[delay:stop] = chirp(baseline, baseline.samples)[:stop - delay]
    profile = dechirp(echo, baseline, n_bins)
    profile.setflags(write=False)
    return profile


class FmcwProcessor(RangeProcessor):
    """Сжатие по дальности через частоту биений; далее общий тракт."""

    def __init__(self, config, n_fft=None):
        super().__init__(config, n_fft)
        self.baseline = FmcwBaseline.from_config(config)
        self.range_bin_m = self.baseline.range_bin_m
        max_range = config.range_bins * config.range_bin_m
        self.n_bins = int(np.ceil(max_range / self.range_bin_m))

    def range_profiles(self, cube, pulse):
        return dechirp(cube.pulse(pulse), self.baseline, self.n_bins)

    def unit_profile(self, seed, delay):
        return _fmcw_unit_profile(
            self.baseline, int(delay), self.n_bins,
            2 * self.baseline.samples,
        )


def fmcw_range_process(cube, config, pulse=0):
    return FmcwProcessor(config).form_ambiguity(cube, pulse)
