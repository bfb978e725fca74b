"""Обработка эха BS: карта дальность-азимут, CLEAN, кластеры, доплер."""
import logging
from dataclasses import replace
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.constants import speed_of_light
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from channel.propagation import echo_delay_samples
from core.config import RADAR_WAVEFORM_SAMPLES
from core.exceptions import ArgumentError, ConfigurationError
from core.utils import db_to_linear
from phy.preamble import build_radar_waveform, radar_reference
from phy.rate import filter_for, rate_convert_ofdm_to_sc
from radar.cube import AmbiguityMap, Detection, Extraction
from sequences.golay import CANONICAL_SEED, correlate_columns, normalized_peak

logger = logging.getLogger(__name__)

REFINE_LAGS = 2
FIT_HALF_WIDTH = 8
PROFILE_FLOOR = 0.3


class BurstKind(str, Enum):
    RADAR_ECHO = 'radar_echo'
    UPLINK_PACKET = 'uplink_packet'
    UNKNOWN = 'unknown'


def classify_burst(rx, radar_seeds, config, threshold=None):
    """Эхо своих импульсов или пакет UL с канонической преамбулой."""
    rx = np.asarray(rx, dtype=complex)
    if rx.size == 0:
        raise ArgumentError('Пустой принятый фрагмент.')
    threshold = config.classify_threshold if threshold is None else threshold
    chips = rate_convert_ofdm_to_sc(rx, filter_for(config), axis=0)
    radar_score = max(
        normalized_peak(chips, radar_reference(seed)) for seed in radar_seeds
    )
    comm_score = normalized_peak(chips, radar_reference(CANONICAL_SEED))
    is_radar = radar_score >= threshold
    is_comm = comm_score >= threshold
    if is_radar and is_comm:
        logger.warning(
            'Неоднозначная классификация: радар %.2f, связь %.2f',
            radar_score, comm_score,
        )
        return BurstKind.UNKNOWN
    if is_radar:
        return BurstKind.RADAR_ECHO
    if is_comm:
        return BurstKind.UPLINK_PACKET
    return BurstKind.UNKNOWN


def noise_power_estimate(values):
    """Средняя мощность шума по медиане экспоненциального распределения."""
    return float(np.median(np.abs(values) ** 2) / np.log(2))


def doppler_to_velocity(doppler_hz, carrier_frequency):
    return doppler_hz * speed_of_light / (2 * carrier_frequency)


class RangeProcessor:
    """Общая часть: азимутальное ДПФ по элементам и отклик точки.

    Наследники задают сжатие по дальности одного импульса и его отклик
    на единичный рассеиватель в заданном бине.
    """

    range_bin_m = None
    n_bins = None

    def __init__(self, config, n_fft=None, spacing=None):
        self.config = config
        self.n_fft = config.azimuth_fft if n_fft is None else n_fft
        self.spacing = config.bs_spacing if spacing is None else spacing
        if self.n_fft < config.bs_elements or self.n_fft & (self.n_fft - 1):
            raise ConfigurationError(
                f'Размер ДПФ {self.n_fft} меньше числа элементов '
                f'или не степень двойки.'
            )
        self._azimuth_response = np.fft.fft(
            np.ones(config.bs_elements), n=self.n_fft
        )

    def range_profiles(self, cube, pulse):
        raise NotImplementedError

    def unit_profile(self, seed, delay):
        """Профиль дальности эха с задержкой delay отсчётов OFDM."""
        raise NotImplementedError

    def delay_of(self, range_bin):
        return echo_delay_samples(
            range_bin * self.range_bin_m, self.config.ofdm_rate
        )

    def candidate_delays(self, range_bin):
        """Целые задержки OFDM, чей пик может попасть в этот бин."""
        center = self.delay_of(range_bin)
        return [delay for delay in (center, center - 1, center + 1)
                if delay >= 0]

    def pulse_seed(self, cube, pulse):
        return cube.seeds[pulse]

    def form_ambiguity(self, cube, pulse, source=None):
        profiles = self.range_profiles(cube, pulse)
        return AmbiguityMap(
            values=np.fft.fft(profiles, n=self.n_fft, axis=1),
            range_bin_m=self.range_bin_m,
            spacing=self.spacing,
            pulse=pulse,
            seed=self.pulse_seed(cube, pulse),
            source=cube if source is None else source,
            processor=self,
        )

    def point_spread(self, seed, range_bin, azimuth_bin, residual=None):
        """Отклик единичного рассеивателя, равный 1 в его ячейке.

        Если передана остаточная карта, задержка выбирается по лучшему
        совпадению со столбцом карты около пика.
        """
        profiles = [
            profile for profile in (
                self.unit_profile(seed, delay)
                for delay in self.candidate_delays(range_bin)
            )
            if abs(profile[range_bin]) > PROFILE_FLOOR * np.abs(profile).max()
        ]
        profile = profiles[0] if profiles else self.unit_profile(
            seed, self.delay_of(range_bin)
        )
        if residual is not None and len(profiles) > 1:
            column = residual[:, azimuth_bin]
            window = slice(
                max(0, range_bin - FIT_HALF_WIDTH),
                range_bin + FIT_HALF_WIDTH + 1,
            )
            errors = [
                np.linalg.norm(
                    column[window]
                    - column[range_bin] * item[window] / item[range_bin]
                )
                for item in profiles
            ]
            profile = profiles[int(np.argmin(errors))]
        azimuth = np.roll(self._azimuth_response, azimuth_bin)
        response = np.outer(profile, azimuth)
        return response / response[range_bin, azimuth_bin]

    def cell_amplitudes(self, cube, maps, cell):
        """Комплексные значения ячейки в импульсах карт maps."""
        return tuple(item.values[cell] for item in maps)


@lru_cache(maxsize=4096)
def _golay_unit_profile(seed, delay, taps, ofdm_rate, n_bins, window):
    taps = np.asarray(taps)
    waveform = build_radar_waveform(seed, taps, ofdm_rate).samples
    echo = np.zeros(window, dtype=complex)
    stop = min(window, delay + waveform.size)
    echo[delay:stop] = waveform[:stop - delay]
    chips = rate_convert_ofdm_to_sc(echo, taps)
    profile = correlate_columns(chips, radar_reference(seed), n_bins)[:, 0]
    profile.setflags(write=False)
    return profile


class GolayRangeProcessor(RangeProcessor):
    """Понижение частоты и корреляция с Golay своего импульса."""

    def __init__(self, config, n_fft=None):
        super().__init__(config, n_fft)
        self.taps = filter_for(config)
        self.range_bin_m = config.range_bin_m
        self.n_bins = config.range_bins

    def _chips(self, cube):
        return cube.downsample(self.taps, self.config.chip_rate)

    def range_profiles(self, cube, pulse):
        chips = self._chips(cube)
        return correlate_columns(
            chips.pulse(pulse), radar_reference(cube.seeds[pulse]),
            self.n_bins,
        )

    def form_ambiguity(self, cube, pulse, source=None):
        return super().form_ambiguity(
            self._chips(cube), pulse, cube if source is None else source
        )

    def unit_profile(self, seed, delay):
        return _golay_unit_profile(
            seed, int(delay), tuple(self.taps), self.config.ofdm_rate,
            self.n_bins, 2 * RADAR_WAVEFORM_SAMPLES,
        )

    def cell_amplitudes(self, cube, maps, cell):
        """Корреляция на частоте OFDM с точным импульсом каждого seed.

        Пики на дробной задержке после понижения частоты получают фазу,
        зависящую от последовательности; на исходной сетке отсчётов
        фаза общая для всех импульсов.
        """
        if np.isclose(cube.sample_rate, self.config.chip_rate):
            return super().cell_amplitudes(cube, maps, cell)
        range_bin, azimuth_bin = cell
        steering = np.exp(
            -2j * np.pi * azimuth_bin * np.arange(cube.elements) / self.n_fft
        )
        center = self.delay_of(range_bin)
        lags = [
            lag
            for lag in range(center - REFINE_LAGS, center + REFINE_LAGS + 1)
            if 0 <= lag < cube.fast_time
        ]
        responses = []
        for item in maps:
            seed = cube.seeds[item.pulse]
            beam = cube.pulse(item.pulse) @ steering
            waveform = build_radar_waveform(
                seed, self.taps, self.config.ofdm_rate
            ).samples
            row = []
            for lag in lags:
                length = min(waveform.size, cube.fast_time - lag)
                row.append(np.vdot(waveform[:length], beam[lag:lag + length]))
            responses.append(row)
        best = int(np.argmax(np.abs(responses[0])))
        return tuple(row[best] for row in responses)


def clean_extract(amap, processor, threshold_rel=None, max_iter=None,
                  min_snr_db=None):
    """Итеративное вычитание откликов точечных целей из карты."""
    config = processor.config
    threshold_rel = (
        config.clean_threshold if threshold_rel is None else threshold_rel
    )
    max_iter = config.clean_max_iter if max_iter is None else max_iter
    min_snr_db = config.clean_min_snr_db if min_snr_db is None else min_snr_db
    if not 0 < threshold_rel < 1:
        raise ArgumentError('Относительный порог CLEAN должен быть в (0, 1).')
    residual = np.array(amap.values, dtype=complex)
    magnitude = np.abs(residual)
    peak = magnitude.max() if magnitude.size else 0.0
    if peak == 0:
        return []
    gate = noise_power_estimate(residual) * db_to_linear(min_snr_db)
    extractions = []
    for _ in range(max_iter):
        range_bin, azimuth_bin = np.unravel_index(
            np.argmax(np.abs(residual)), residual.shape
        )
        value = residual[range_bin, azimuth_bin]
        if abs(value) < threshold_rel * peak or abs(value) ** 2 < gate:
            break
        extractions.append(Extraction(
            amplitude=complex(value),
            range_bin=int(range_bin),
            azimuth_bin=int(azimuth_bin),
            range_m=float(range_bin * amap.range_bin_m),
            azimuth_deg=float(amap.azimuth_of(azimuth_bin)),
        ))
        residual -= value * processor.point_spread(
            amap.seed, range_bin, azimuth_bin, residual
        )
    logger.debug('CLEAN: %d точек', len(extractions))
    return extractions


def _wrap(offset, period):
    return (offset + period / 2) % period - period / 2


def cluster_detections(extractions, range_gate_bins, azimuth_gate_bins, amap):
    """Связывание точек CLEAN по одиночной связи в пределах ворот."""
    if range_gate_bins < 1 or azimuth_gate_bins < 1:
        raise ArgumentError('Ворота кластеризации меньше одного бина.')
    if not extractions:
        return []
    period = amap.n_fft
    ranges = np.array([item.range_bin for item in extractions], dtype=float)
    azimuths = np.array(
        [item.azimuth_bin for item in extractions], dtype=float
    )
    weights = np.array([abs(item.amplitude) for item in extractions])
    range_gap = np.abs(ranges[:, None] - ranges[None, :])
    azimuth_gap = np.abs(_wrap(azimuths[:, None] - azimuths[None, :], period))
    adjacency = (range_gap <= range_gate_bins) & (
        azimuth_gap <= azimuth_gate_bins
    )
    count, labels = connected_components(
        csr_matrix(adjacency), directed=False
    )
    detections = []
    for label in range(count):
        members = np.flatnonzero(labels == label)
        strongest = members[np.argmax(weights[members])]
        local = weights[members]
        unwrapped = azimuths[strongest] + _wrap(
            azimuths[members] - azimuths[strongest], period
        )
        range_bin = float(np.sum(local * ranges[members]) / local.sum())
        azimuth_bin = float(np.sum(local * unwrapped) / local.sum())
        phase = np.exp(1j * np.angle(extractions[strongest].amplitude))
        detections.append(Detection(
            range_m=range_bin * amap.range_bin_m,
            azimuth_deg=float(amap.azimuth_of(azimuth_bin)),
            amplitude=complex(np.sqrt(np.sum(local ** 2)) * phase),
            cluster_members=int(members.size),
            range_bin=extractions[strongest].range_bin,
            azimuth_bin=extractions[strongest].azimuth_bin,
        ))
    return sorted(detections, key=lambda item: -abs(item.amplitude))


def pulse_pair_phase(first, second, pri):
    """Доплер по разности фаз двух импульсов; сближение даёт f_D > 0."""
    return float(-np.angle(second * np.conj(first)) / (2 * np.pi * pri))


def pair_amplitudes(map1, map2, cell):
    """Значения ячейки в двух импульсах.

    Для карт, построенных из куба, фаза берётся на исходной частоте
    отсчётов: после понижения частоты пик на дробной задержке получает
    фазу, зависящую от seed импульса.
    """
    if map1.source is not None and map1.processor is not None:
        return map1.processor.cell_amplitudes(map1.source, (map1, map2), cell)
    return map1.values[cell], map2.values[cell]


def pulse_pair_doppler(map1, map2, cell, pri, noise_power=None):
    """Доплеровская частота в ячейке и признак надёжности оценки."""
    if map1.shape != map2.shape:
        raise ArgumentError('Карты импульсов имеют разные оси.')
    range_bin, azimuth_bin = cell
    if not (0 <= range_bin < map1.shape[0] and 0 <= azimuth_bin < map1.n_fft):
        raise ArgumentError(f'Ячейка {cell} вне карты.')
    cell = (int(range_bin), int(azimuth_bin))
    first, second = pair_amplitudes(map1, map2, cell)
    noise_power = (
        noise_power_estimate(map1.values) if noise_power is None
        else noise_power
    )
    reliable = abs(map1.values[cell]) ** 2 > noise_power
    if not reliable:
        logger.warning('Ячейка %s ниже уровня шума', cell)
    return pulse_pair_phase(first, second, pri), bool(reliable)


def detect_targets(cube, config, processor=None, range_gate_bins=None,
                   azimuth_gate_bins=None):
    """Все кластеры CLEAN с оценкой доплера и признаком движения."""
    if cube.pulses < 2:
        raise ArgumentError('Для оценки доплера нужно два импульса.')
    processor = processor or GolayRangeProcessor(config)
    range_gate_bins = range_gate_bins or config.range_gate_bins
    azimuth_gate_bins = azimuth_gate_bins or config.azimuth_gate_bins
    maps = [processor.form_ambiguity(cube, pulse) for pulse in (0, 1)]
    clusters = cluster_detections(
        clean_extract(maps[0], processor), range_gate_bins,
        azimuth_gate_bins, maps[0],
    )
    noise_power = noise_power_estimate(maps[0].values)
    detections = []
    for cluster in clusters:
        cell = (cluster.range_bin, cluster.azimuth_bin)
        doppler, reliable = pulse_pair_doppler(
            maps[0], maps[1], cell, config.pulse_repetition_interval,
            noise_power,
        )
        velocity = doppler_to_velocity(doppler, config.carrier_frequency)
        detections.append(replace(
            cluster,
            doppler_hz=doppler,
            radial_velocity_mps=velocity,
            is_dynamic=bool(abs(velocity) > config.min_radial_velocity),
            reliable=reliable,
        ))
    logger.debug('Обнаружено целей: %d', len(detections))
    return detections


def detect_mu(cube, config, processor=None, **gates):
    """Движущиеся цели, упорядоченные по амплитуде."""
    dynamic = [
        item for item in detect_targets(cube, config, processor, **gates)
        if item.is_dynamic
    ]
    if not dynamic:
        logger.info('Движущиеся цели не обнаружены')
    return sorted(dynamic, key=lambda item: -abs(item.amplitude))
