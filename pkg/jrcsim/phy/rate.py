"""Преобразование частоты дискретизации 1.76 ГГц <-> 2.64 ГГц."""
from functools import lru_cache

import numpy as np
from scipy import signal

from core.exceptions import ConfigurationError

UP = 3
DOWN = 2


@lru_cache(maxsize=None)
def design_filter(n_taps, cutoff, chip_rate):
    """ФНЧ с линейной фазой на промежуточной частоте 3·f_sc."""
    if n_taps % 2 == 0:
        raise ConfigurationError('Число отводов фильтра должно быть нечётным.')
    taps = signal.firwin(n_taps, cutoff, fs=UP * chip_rate)
    taps.setflags(write=False)
    return taps


def filter_for(config):
    return design_filter(
        config.filter_taps, config.filter_cutoff, config.chip_rate
    )


def _check_taps(taps):
    taps = np.asarray(taps, dtype=float)
    if taps.ndim != 1 or taps.size % 2 == 0:
        raise ConfigurationError('Нужен одномерный фильтр нечётной длины.')
    return taps


def rate_convert_sc_to_ofdm(chips, taps, axis=0):
    """Повышение в 3, фильтрация, понижение в 2; задержка скомпенсирована."""
    return signal.resample_poly(
        np.asarray(chips, dtype=complex), UP, DOWN,
        axis=axis, window=_check_taps(taps),
    )


def rate_convert_ofdm_to_sc(samples, taps, axis=0):
    return signal.resample_poly(
        np.asarray(samples, dtype=complex), DOWN, UP,
        axis=axis, window=_check_taps(taps),
    )


def passband_gain(taps, frequency, chip_rate):
    """Коэффициент передачи фильтра на заданной частоте."""
    _, response = signal.freqz(taps, worN=[frequency], fs=UP * chip_rate)
    return float(np.abs(response[0]))
