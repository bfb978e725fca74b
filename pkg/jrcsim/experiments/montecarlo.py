"""Монте-Карло СКО оценок дальности, азимута и радиальной скорости."""
import logging
from dataclasses import dataclass
from functools import lru_cache
from multiprocessing import Pool

import numpy as np
import pandas as pd
from django.conf import settings

from channel.propagation import two_way_gain
from core.utils import db_to_linear, trial_rng
from experiments.config import Experiment, Waveform, run_hash
from phy.preamble import build_radar_waveform
from phy.rate import filter_for
from radar.cube import simulate_radar_cube
from radar.fmcw import FmcwBaseline, FmcwProcessor
from radar.processing import GolayRangeProcessor, detect_targets
from scene.sampling import (
    ground_truth, sample_scene, spawn_multi_target_scene, spawn_point_target,
)
from scene.targets import (
    CAR_SPEED, PEDESTRIAN_SPEED, Trajectory, car, pedestrian,
)

logger = logging.getLogger(__name__)

MC_COLUMNS = [
    'experiment', 'channel', 'waveform', 'snr_db', 'rmse_range_m',
    'rmse_azimuth_deg', 'rmse_velocity_mps', 'detection_rate',
    'detections', 'truths', 'trials', 'config_hash',
]
SCENE_STREAM = 0
NOISE_STREAM = 1


@dataclass(frozen=True)
class TrialOutcome:
    trial: int
    snr_db: float
    waveform: Waveform
    truths: int
    hits: int
    range_se: float
    azimuth_se: float
    velocity_se: float


@dataclass(frozen=True)
class WaveformChain:
    """Радарные импульсы и тракт обработки одного типа сигнала."""

    waveforms: tuple
    processor: object
    power: float


@lru_cache(maxsize=4)
def waveform_chain(waveform, config):
    if waveform is Waveform.FMCW:
        waveforms = tuple(FmcwBaseline.from_config(config).waveforms())
        processor = FmcwProcessor(config)
    else:
        taps = filter_for(config)
        waveforms = tuple(
            build_radar_waveform(pulse, taps, config.ofdm_rate)
            for pulse in range(1, config.pulses + 1)
        )
        processor = GolayRangeProcessor(config)
    power = float(np.mean(np.abs(waveforms[0].samples) ** 2))
    return WaveformChain(waveforms, processor, power)


def draw_scene(experiment, trajectory, rng):
    """Цели испытания и момент наблюдения."""
    if experiment is Experiment.MC_POINT:
        return [spawn_point_target(rng)], 0.0
    if experiment is Experiment.MC_MULTI:
        return spawn_multi_target_scene(rng), 0.0
    if experiment is Experiment.MC_PEDESTRIAN:
        builder, speed = pedestrian, PEDESTRIAN_SPEED
    else:
        builder, speed = car, CAR_SPEED
    path = getattr(Trajectory, trajectory)(speed=speed)
    return [builder(path)], float(rng.uniform(0.0, path.duration))


def cluster_gates(experiment, config):
    if experiment is Experiment.MC_CAR:
        experiments = getattr(settings, 'EXPERIMENTS', {})
        return (
            experiments.get('CAR_RANGE_GATE_BINS', 60),
            experiments.get('CAR_AZIMUTH_GATE_BINS', 40),
        )
    return config.range_gate_bins, config.azimuth_gate_bins


def association_gates(experiment, config):
    """Ворота сопоставления оценки с истиной, в бинах."""
    if experiment in (Experiment.MC_PEDESTRIAN, Experiment.MC_CAR):
        return cluster_gates(experiment, config)
    experiments = getattr(settings, 'EXPERIMENTS', {})
    gate = experiments.get('ASSOCIATION_GATE_BINS', 5)
    return gate, gate


def noise_power_for(snr_db, target, distance, config, model, chain):
    """Шум, при котором эхо первой цели на элементе имеет заданный SNR."""
    mean_rcs = sum(item.mean_rcs for item in target.scatterers)
    signal = (
        config.radar_tx_power_w * mean_rcs * chain.power
        * abs(two_way_gain(distance, model, config.wavelength)) ** 2
    )
    return signal / db_to_linear(snr_db)


def associate(truths, detections, range_bin_m, spacing_bins, gates):
    """Ближайший сосед по (дальность, азимут); каждая оценка используется раз.

    Возвращает пары (истина, оценка) для сопоставленных целей.
    """
    candidates = []
    for i, (distance, azimuth, _) in enumerate(truths):
        for j, item in enumerate(detections):
            range_offset = (item.range_m - distance) / range_bin_m
            azimuth_offset = spacing_bins * (
                np.sin(np.radians(item.azimuth_deg))
                - np.sin(np.radians(azimuth))
            )
            if abs(range_offset) > gates[0] or abs(azimuth_offset) > gates[1]:
                continue
            candidates.append((np.hypot(range_offset, azimuth_offset), i, j))
    pairs, used_truths, used_detections = [], set(), set()
    for _, i, j in sorted(candidates):
        if i in used_truths or j in used_detections:
            continue
        used_truths.add(i)
        used_detections.add(j)
        pairs.append((truths[i], detections[j]))
    return pairs


def run_trial(task):
    """Одно испытание на всех SNR и типах сигнала.

    Сцена и шум зависят только от номера испытания, поэтому точки сетки
    SNR используют одни и те же реализации.
    """
    system, experiment, trial = task
    model = experiment.channel_model()
    scene_rng = trial_rng(experiment.rng_seed, trial, SCENE_STREAM)
    targets, t = draw_scene(
        experiment.experiment, experiment.trajectory, scene_rng
    )
    scatterers = [
        sample for target in targets
        for sample in sample_scene(target, t, scene_rng)
    ]
    truths = [ground_truth(target, t) for target in targets]
    gates = cluster_gates(experiment.experiment, system)
    association = association_gates(experiment.experiment, system)
    outcomes = []
    for waveform in experiment.waveforms:
        chain = waveform_chain(waveform, system)
        spacing_bins = system.azimuth_fft * system.bs_spacing
        for snr_db in experiment.snr_grid_db:
            noise_power = noise_power_for(
                snr_db, targets[0], truths[0][0], system, model, chain
            )
            cube = simulate_radar_cube(
                scatterers, system, model,
                trial_rng(experiment.rng_seed, trial, NOISE_STREAM),
                noise_power=noise_power, waveforms=list(chain.waveforms),
            )
            detections = detect_targets(
                cube, system, chain.processor, *gates
            )
            pairs = associate(
                truths, detections, chain.processor.range_bin_m,
                spacing_bins, association,
            )
            errors = np.array([
                (
                    item.range_m - distance,
                    item.azimuth_deg - azimuth,
                    item.radial_velocity_mps - velocity,
                )
                for (distance, azimuth, velocity), item in pairs
            ]).reshape(-1, 3)
            squared = np.sum(errors ** 2, axis=0)
            outcomes.append(TrialOutcome(
                trial=trial, snr_db=snr_db, waveform=waveform,
                truths=len(truths), hits=len(pairs),
                range_se=float(squared[0]), azimuth_se=float(squared[1]),
                velocity_se=float(squared[2]),
            ))
    logger.debug(
        'Испытание %d: целей %d, t=%.3f с', trial, len(targets), t
    )
    return outcomes


def _rmse(total, count):
    return float(np.sqrt(total / count)) if count else np.nan


def reduce_outcomes(outcomes, system, experiment):
    """Сводка по испытаниям; порядок результатов не важен."""
    frame = pd.DataFrame(
        [vars(item) for item in sorted(
            outcomes, key=lambda item: (item.trial, item.waveform.value,
                                        item.snr_db)
        )]
    )
    digest = run_hash(system, experiment)
    rows = []
    for waveform in experiment.waveforms:
        for snr_db in experiment.snr_grid_db:
            cell = frame[
                (frame['waveform'] == waveform) & (frame['snr_db'] == snr_db)
            ]
            hits = int(cell['hits'].sum())
            truths = int(cell['truths'].sum())
            if not hits:
                logger.warning(
                    '%s, %s дБ: ни одной сопоставленной оценки',
                    waveform.value, snr_db,
                )
            rows.append({
                'experiment': experiment.experiment.value,
                'channel': experiment.channel.value,
                'waveform': waveform.value,
                'snr_db': snr_db,
                'rmse_range_m': _rmse(cell['range_se'].sum(), hits),
                'rmse_azimuth_deg': _rmse(cell['azimuth_se'].sum(), hits),
                'rmse_velocity_mps': _rmse(cell['velocity_se'].sum(), hits),
                'detection_rate': hits / truths if truths else np.nan,
                'detections': hits,
                'truths': truths,
                'trials': experiment.trials,
                'config_hash': digest,
            })
    return pd.DataFrame(rows, columns=MC_COLUMNS)


def run_mc_rmse(system, experiment):
    """СКО по сетке SNR для JRC и ЛЧМ; испытания делятся между процессами."""
    tasks = [(system, experiment, trial) for trial in range(experiment.trials)]
    logger.info(
        '%s, канал %s: %d испытаний, %d процессов',
        experiment.experiment.value, experiment.channel.value,
        experiment.trials, experiment.workers,
    )
    if experiment.workers > 1:
        with Pool(processes=experiment.workers) as pool:
            chunks = pool.map(run_trial, tasks, chunksize=8)
    else:
        chunks = [run_trial(task) for task in tasks]
    outcomes = [item for chunk in chunks for item in chunk]
    return reduce_outcomes(outcomes, system, experiment)
