"""Преамбула (STF, CEF), радарный сигнал и поля BRF."""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from core.config import RADAR_WAVEFORM_SAMPLES
from core.exceptions import ArgumentError, ConfigurationError
from phy.rate import rate_convert_sc_to_ofdm
from sequences.golay import CANONICAL_SEED, golay_set

STF_REPETITIONS = 16
STF_CHIPS = (STF_REPETITIONS + 1) * 128
CEF_CHIPS = 512 + 512 + 128
PREAMBLE_CHIPS = STF_CHIPS + CEF_CHIPS
PREAMBLE_SAMPLES = 4992
STF_SAMPLES = STF_CHIPS * 3 // 2
RADAR_START = 4032
RADAR_SLICE = slice(RADAR_START, RADAR_START + RADAR_WAVEFORM_SAMPLES)
RADAR_REFERENCE_CHIPS = slice(512, 1024)

AGC_REPETITIONS = 5
AGC_CHIPS = AGC_REPETITIONS * 64
TRN_SUBFIELDS_PER_UNIT = 4
TRN_SUBFIELD_CHIPS = 5 * 128
TRN_UNIT_CHIPS = CEF_CHIPS + TRN_SUBFIELDS_PER_UNIT * TRN_SUBFIELD_CHIPS
MAX_BRF_FIELDS = 64


def rotation(length):
    """Поворот фазы exp(j·pi·m/2) без ошибок округления."""
    return (1j) ** (np.arange(length) % 4)


def build_stf(seed=CANONICAL_SEED):
    ga128 = golay_set(seed).ga128
    chips = np.tile(ga128, STF_REPETITIONS + 1).astype(complex)
    chips[STF_REPETITIONS * 128:] *= -1
    return chips * rotation(STF_CHIPS)


def cef_sequence(seed=CANONICAL_SEED):
    sequences = golay_set(seed)
    return np.concatenate(
        [sequences.gu512, sequences.gv512, sequences.gv128]
    ).astype(complex)


def build_cef(seed=CANONICAL_SEED):
    return cef_sequence(seed) * rotation(CEF_CHIPS)


@lru_cache(maxsize=None)
def _preamble(seed, taps):
    chips = np.concatenate([build_stf(seed), build_cef(seed)])
    samples = rate_convert_sc_to_ofdm(chips, np.asarray(taps))
    samples.setflags(write=False)
    return samples


def build_preamble(taps, seed=CANONICAL_SEED):
    """STF и CEF, переведённые на частоту OFDM: 4992 отсчёта."""
    return _preamble(seed, tuple(np.asarray(taps, dtype=float)))


@dataclass(frozen=True)
class RadarWaveform:
    samples: np.ndarray
    pulse_index: int
    seed: int
    sample_rate: float

    @property
    def duration(self):
        return self.samples.size / self.sample_rate


def extract_radar_waveform(preamble, pulse_index, sample_rate, seed=None):
    """Вырезает 768 отсчётов CEF, которые излучаются как радарный импульс."""
    preamble = np.asarray(preamble)
    if preamble.size != PREAMBLE_SAMPLES:
        raise ArgumentError(
            f'Ожидалась преамбула из {PREAMBLE_SAMPLES} отсчётов, '
            f'получено {preamble.size}.'
        )
    return RadarWaveform(
        samples=np.array(preamble[RADAR_SLICE]),
        pulse_index=pulse_index,
        seed=pulse_index if seed is None else seed,
        sample_rate=sample_rate,
    )


def build_radar_waveform(pulse_index, taps, sample_rate):
    """Импульс с номером p (1..P) строится по преамбуле с seed p."""
    if pulse_index < 1:
        raise ArgumentError('Импульсы нумеруются с единицы.')
    return extract_radar_waveform(
        build_preamble(taps, seed=pulse_index), pulse_index, sample_rate
    )


def radar_reference(seed):
    """Опорная последовательность приёмника на чиповой частоте."""
    return build_cef(seed)[RADAR_REFERENCE_CHIPS]


@dataclass(frozen=True)
class BrfField:
    samples: np.ndarray
    agc_ranges: tuple
    trn_ranges: tuple

    @property
    def field_count(self):
        return len(self.agc_ranges)


def _chips_to_samples(chip_range):
    start, stop = chip_range
    return start * 3 // 2, stop * 3 // 2


def build_brf(m_fields, taps, seed=CANONICAL_SEED):
    """AGC-подполя и блоки TRN; подполе TRN k соответствует лучу k."""
    if m_fields % TRN_SUBFIELDS_PER_UNIT or not 0 <= m_fields <= (
        MAX_BRF_FIELDS
    ):
        raise ConfigurationError(
            f'Число полей BRF должно быть кратно 4 и не больше '
            f'{MAX_BRF_FIELDS}, получено {m_fields}.'
        )
    if m_fields == 0:
        return BrfField(
            samples=np.zeros(0, dtype=complex), agc_ranges=(), trn_ranges=()
        )
    sequences = golay_set(seed)
    trn_subfield = np.concatenate([
        sequences.ga128, -sequences.gb128, sequences.ga128,
        sequences.gb128, sequences.ga128,
    ])
    parts = []
    agc_ranges = []
    trn_ranges = []
    offset = 0
    for _ in range(m_fields):
        parts.append(np.tile(sequences.ga64, AGC_REPETITIONS))
        agc_ranges.append((offset, offset + AGC_CHIPS))
        offset += AGC_CHIPS
    for _ in range(m_fields // TRN_SUBFIELDS_PER_UNIT):
        parts.append(cef_sequence(seed))
        offset += CEF_CHIPS
        for _ in range(TRN_SUBFIELDS_PER_UNIT):
            parts.append(trn_subfield)
            trn_ranges.append((offset, offset + TRN_SUBFIELD_CHIPS))
            offset += TRN_SUBFIELD_CHIPS
    chips = np.concatenate(parts).astype(complex) * rotation(offset)
    return BrfField(
        samples=rate_convert_sc_to_ofdm(chips, taps),
        agc_ranges=tuple(map(_chips_to_samples, agc_ranges)),
        trn_ranges=tuple(map(_chips_to_samples, trn_ranges)),
    )


def brf_samples(m_fields):
    return m_fields * (AGC_CHIPS + TRN_UNIT_CHIPS // 4) * 3 // 2
