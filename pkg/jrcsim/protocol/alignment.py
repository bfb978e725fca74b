"""Stage 1: стандартная тренировка лучей и выравнивание по радару."""
import logging
from dataclasses import dataclass, field

import numpy as np

from channel.arrays import ArrayGeometry
from channel.propagation import delay_samples, draw_nlos, propagate_comm
from core.utils import db_to_linear
from phy.packet import build_packet
from protocol.timing import BOTH, EventKind, Protocol, stage1_timeline
from radar.cube import simulate_radar_cube
from radar.processing import BurstKind, classify_burst, detect_mu
from scene.sampling import as_rng, ground_truth, sample_scene

logger = logging.getLogger(__name__)

RETRY_GUARD_S = 1e-6


@dataclass(frozen=True)
class Link:
    """Геометрия линии BS-MU; решётки MU и BS обращены друг к другу."""

    distance: float
    theta_deg: float
    phi_deg: float

    @classmethod
    def from_target(cls, target, t):
        distance, azimuth, _ = ground_truth(target, t)
        return cls(distance, azimuth, azimuth)


@dataclass(frozen=True)
class AlignmentTrace:
    protocol: Protocol
    events: tuple
    stage1_duration_s: float
    bs_complete_s: float
    mu_complete_s: float
    chosen_bs_beam: object = None
    chosen_mu_beam: int = None
    bs_angle_deg: float = np.nan
    mu_azimuths_deg: tuple = ()
    gains: np.ndarray = None
    failed: bool = False
    bursts: tuple = field(default=())


def _arrays(config):
    return ArrayGeometry.for_bs(config), ArrayGeometry.for_mu(config)


def _field_gain(samples, link, bs, mu, bs_weights, mu_weights, channel,
                config, rng, nlos=None):
    """Нормированный на шум квадрат корреляции с известным полем."""
    received = propagate_comm(
        samples, link.distance, link.theta_deg, link.phi_deg, bs, mu,
        bs_weights, mu_weights, channel, config, rng, nlos=nlos,
    )
    delay = delay_samples(link.distance, config.ofdm_rate)
    window = received[delay:delay + samples.size]
    energy = np.vdot(samples, samples).real
    return abs(np.vdot(samples, window)) ** 2 / (
        energy * config.noise_power_w
    )


def _nlos(channel, rng):
    return draw_nlos(rng) if channel.is_rician else None


def brf_gains(packet, link, config, channel, rng):
    """Матрица M × N корреляций полей TRN по лучам BS и MU."""
    bs, mu = _arrays(config)
    bs_angles = bs.codebook(config.bs_beams, config.codebook_max_angle)
    mu_angles = mu.codebook(config.mu_beams, config.codebook_max_angle)
    gains = np.zeros((bs_angles.size, mu_angles.size))
    for n, mu_angle in enumerate(mu_angles):
        nlos = _nlos(channel, rng)
        mu_weights = mu.directional_weights(mu_angle)
        for m, (start, stop) in enumerate(packet.trn_ranges):
            gains[m, n] = _field_gain(
                packet.samples[start:stop], link, bs, mu,
                bs.directional_weights(bs_angles[m]), mu_weights, channel,
                config, rng, nlos,
            )
    return gains


def _trace(protocol, timeline, failed=False, **fields):
    if failed:
        logger.warning(
            'Выравнивание %s не удалось, повтор через %.1f мс',
            protocol.value, timeline.stage1_duration_s * 1e3,
        )
        timeline.add(
            EventKind.ALIGNMENT_FAILED, RETRY_GUARD_S, BOTH,
            row='alignment_failed',
        )
    return AlignmentTrace(
        protocol=protocol,
        events=tuple(timeline.events),
        stage1_duration_s=timeline.stage1_duration_s,
        bs_complete_s=timeline.completion('bs'),
        mu_complete_s=timeline.completion('mu'),
        failed=failed,
        **fields,
    )


def run_standard_alignment(config, target, channel, rng_seed=None, t=0.0):
    """N пакетов DL с M полями BRF; лучшая пара по матрице корреляций."""
    rng = as_rng(rng_seed)
    link = Link.from_target(target, t)
    packet = build_packet(
        'downlink', config.standard_data_symbols, config.bs_beams, config,
        rng=rng,
    )
    gains = brf_gains(packet, link, config, channel, rng)
    timeline = stage1_timeline(Protocol.STANDARD, config)
    threshold = db_to_linear(config.beam_detection_snr_db)
    if gains.max() < threshold:
        return _trace(Protocol.STANDARD, timeline, failed=True, gains=gains)
    m, n = np.unravel_index(int(np.argmax(gains)), gains.shape)
    bs, _ = _arrays(config)
    angle = bs.codebook(config.bs_beams, config.codebook_max_angle)[m]
    logger.debug('Стандарт: луч BS %d (%.1f°), луч MU %d', m, angle, n)
    return _trace(
        Protocol.STANDARD, timeline,
        chosen_bs_beam=int(m), chosen_mu_beam=int(n),
        bs_angle_deg=float(angle), gains=gains,
    )


def _radar_cycle(config, target, channel, rng, t, others):
    scatterers = sample_scene(target, t, rng)
    for item in others:
        scatterers = scatterers + sample_scene(item, t, rng)
    cube = simulate_radar_cube(scatterers, config, channel, rng)
    bursts = tuple(
        classify_burst(cube.samples[:, pulse, 0], cube.seeds, config)
        for pulse in range(cube.pulses)
    )
    if BurstKind.UPLINK_PACKET in bursts:
        logger.warning('Среди эхо-сигналов найден пакет UL')
    return detect_mu(cube, config), bursts


def _v1_gains(config, link, theta_b, channel, rng):
    """MU отвечает UL с N полями BRF, BS принимает его лучом на theta_b."""
    bs, mu = _arrays(config)
    packet = build_packet(
        'uplink', config.jrc_data_symbols, config.mu_beams, config, rng=rng,
    )
    mu_angles = mu.codebook(config.mu_beams, config.codebook_max_angle)
    bs_weights = bs.directional_weights(theta_b)
    nlos = _nlos(channel, rng)
    return np.array([
        _field_gain(
            packet.samples[start:stop], link, bs, mu, bs_weights,
            mu.directional_weights(angle), channel, config, rng, nlos,
        )
        for angle, (start, stop) in zip(mu_angles, packet.trn_ranges)
    ])


def _v2_gains(config, link, channel, rng):
    """N пакетов DL, каждый принят своим лучом MU; корреляция преамбул."""
    bs, mu = _arrays(config)
    mu_angles = mu.codebook(config.mu_beams, config.codebook_max_angle)
    gains = []
    for angle in mu_angles:
        packet = build_packet(
            'downlink', config.jrc_data_symbols, 0, config, rng=rng,
        )
        gains.append(_field_gain(
            packet.preamble, link, bs, mu, bs.quasi_omni_weights(),
            mu.directional_weights(angle), channel, config, rng,
            _nlos(channel, rng),
        ))
    return np.array(gains)


def run_jrc_alignment(version, config, target, channel, rng_seed=None,
                      t=0.0, others=()):
    """Радар находит азимут MU для BS; луч MU по версии 1 или 2."""
    protocol = Protocol.jrc(version)
    rng = as_rng(rng_seed)
    timeline = stage1_timeline(protocol, config)
    detections, bursts = _radar_cycle(
        config, target, channel, rng, t, others
    )
    if not detections:
        return _trace(protocol, timeline, failed=True, bursts=bursts)
    link = Link.from_target(target, t)
    theta_b = detections[0].azimuth_deg
    if protocol is Protocol.JRC_V1:
        gains = _v1_gains(config, link, theta_b, channel, rng)
    else:
        gains = _v2_gains(config, link, channel, rng)
    mu_beam = int(np.argmax(gains))
    logger.debug('JRC %s: азимут %.2f°, луч MU %d', protocol.value, theta_b,
                 mu_beam)
    return _trace(
        protocol, timeline,
        chosen_bs_beam=float(theta_b), chosen_mu_beam=mu_beam,
        bs_angle_deg=float(theta_b),
        mu_azimuths_deg=tuple(item.azimuth_deg for item in detections),
        gains=gains, bursts=bursts,
    )
