"""Сеанс связи с движущимся MU: Stage 1, Stage 2 и повторное выравнивание."""
import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import pandas as pd
from django.conf import settings

from channel.arrays import ArrayGeometry
from channel.propagation import delay_samples, propagate_comm
from comm.receiver import receive_packet
from core.exceptions import ArgumentError
from phy.ldpc import INFO_BITS
from phy.packet import build_packet
from protocol.alignment import (
    Link, run_jrc_alignment, run_standard_alignment,
)
from protocol.timing import Protocol, packets_per_interval
from scene.sampling import as_rng
from scene.targets import Trajectory, point_target

logger = logging.getLogger(__name__)

LOG_COLUMNS = [
    't', 'protocol', 'stage', 'ber', 'snr_db', 'bs_beam_deg', 'mu_beam',
    'delivered',
]


class Stage(str, Enum):
    ONE = 'one'
    TWO = 'two'


@dataclass
class SessionState:
    stage: Stage = Stage.ONE
    bs_beam: float = None
    mu_beam: int = None
    snr_estimate_db: float = -np.inf
    realign_threshold_db: float = -np.inf

    def observe(self, snr_db, margin_db):
        """Порог повторного выравнивания следует за пиком SNR в Stage 2."""
        self.snr_estimate_db = snr_db
        self.realign_threshold_db = max(
            self.realign_threshold_db, snr_db - margin_db
        )
        return snr_db < self.realign_threshold_db


@dataclass
class SessionLog:
    protocol: Protocol
    frame: pd.DataFrame
    duration_s: float
    data_bits: int
    packets_per_entry: int
    realignments: int = 0
    traces: list = field(default_factory=list)

    @property
    def delivered_packets(self):
        return int(self.frame['delivered'].sum()) * self.packets_per_entry


def session_target(trajectory, speed=None, mean_rcs=None):
    """Точечный MU на касательной или радиальной траектории."""
    experiments = getattr(settings, 'EXPERIMENTS', {})
    speed = speed or experiments.get('SESSION_MU_SPEED', 10.0)
    mean_rcs = mean_rcs or experiments.get('SESSION_MU_RCS', 10.0)
    builders = {
        'tangential': Trajectory.tangential,
        'radial': Trajectory.radial,
    }
    if trajectory not in builders:
        raise ArgumentError(f'Неизвестная траектория {trajectory}.')
    return point_target(
        builders[trajectory](speed=speed), mean_rcs=mean_rcs, name='mu'
    )


def _align(protocol, config, target, channel, rng, t, others):
    if protocol is Protocol.STANDARD:
        return run_standard_alignment(config, target, channel, rng, t)
    return run_jrc_alignment(protocol, config, target, channel, rng, t,
                             others)


def _weights(trace, elapsed, state, bs, mu, config):
    """Лучи, известные к моменту elapsed от начала выравнивания."""
    if trace.failed:
        return bs.quasi_omni_weights(), mu.quasi_omni_weights()
    bs_weights = bs.quasi_omni_weights()
    mu_weights = mu.quasi_omni_weights()
    if elapsed >= trace.bs_complete_s:
        state.bs_beam = trace.bs_angle_deg
        bs_weights = bs.directional_weights(trace.bs_angle_deg)
    if elapsed >= trace.mu_complete_s:
        state.mu_beam = trace.chosen_mu_beam
        angles = mu.codebook(config.mu_beams, config.codebook_max_angle)
        mu_weights = mu.directional_weights(angles[trace.chosen_mu_beam])
    return bs_weights, mu_weights


def _send_packet(link, bs_weights, mu_weights, config, channel, rng, n_sym):
    packet = build_packet('downlink', n_sym, 0, config, rng=rng)
    bs, mu = ArrayGeometry.for_bs(config), ArrayGeometry.for_mu(config)
    rx = propagate_comm(
        packet.samples, link.distance, link.theta_deg, link.phi_deg, bs, mu,
        bs_weights, mu_weights, channel, config, rng,
    )
    return receive_packet(
        rx, packet, config,
        offset=delay_samples(link.distance, config.ofdm_rate),
    )


def run_session(protocol, target, duration_s, config, channel, rng_seed=0,
                log_interval=None, n_sym=None, others=()):
    """Журнал по одному представительному пакету на интервал.

    Пока BS или MU не знает своего луча, соответствующая сторона
    работает квазиненаправленно. Выравнивание повторяется, когда SNR
    падает ниже пика на realign_margin_db.
    """
    protocol = Protocol(protocol)
    if duration_s <= 0:
        raise ArgumentError('Длительность сеанса должна быть положительной.')
    if duration_s > target.trajectory.duration + 1e-9:
        raise ArgumentError('Сеанс длиннее траектории MU.')
    experiments = getattr(settings, 'EXPERIMENTS', {})
    log_interval = log_interval or experiments.get(
        'SESSION_LOG_INTERVAL', 2e-3
    )
    n_sym = n_sym or config.jrc_data_symbols
    rng = as_rng(rng_seed)
    bs, mu = ArrayGeometry.for_bs(config), ArrayGeometry.for_mu(config)
    state = SessionState()
    traces = []
    realignments = 0
    rows = []
    align_start = 0.0
    trace = _align(protocol, config, target, channel, rng, 0.0, others)
    traces.append(trace)
    for t in np.arange(0.0, duration_s, log_interval):
        elapsed = t - align_start
        if state.stage is Stage.ONE and elapsed >= trace.stage1_duration_s:
            if trace.failed:
                align_start = t
                trace = _align(protocol, config, target, channel, rng, t,
                               others)
                traces.append(trace)
                elapsed = 0.0
            else:
                state.stage = Stage.TWO
                state.realign_threshold_db = -np.inf
        bs_weights, mu_weights = _weights(
            trace, elapsed, state, bs, mu, config
        )
        directional = not trace.failed and elapsed >= trace.bs_complete_s
        link = Link.from_target(target, t)
        payload = _send_packet(
            link, bs_weights, mu_weights, config, channel, rng, n_sym
        )
        rows.append({
            't': float(t),
            'protocol': protocol.value,
            'stage': state.stage.value,
            'ber': payload.ber,
            'snr_db': payload.snr_db,
            'bs_beam_deg': state.bs_beam if directional else np.nan,
            'mu_beam': state.mu_beam if state.mu_beam is not None else -1,
            'delivered': bool(directional),
        })
        if state.stage is Stage.TWO and state.observe(
            payload.snr_db, config.realign_margin_db
        ):
            logger.info(
                '%s: SNR %.1f дБ ниже порога на %.3f с, повторное '
                'выравнивание', protocol.value, payload.snr_db, t,
            )
            realignments += 1
            state = SessionState()
            align_start = t + log_interval
            trace = _align(protocol, config, target, channel, rng,
                           align_start, others)
            traces.append(trace)
    return SessionLog(
        protocol=protocol,
        frame=pd.DataFrame(rows, columns=LOG_COLUMNS),
        duration_s=float(duration_s),
        data_bits=n_sym * INFO_BITS,
        packets_per_entry=packets_per_interval(config, log_interval, n_sym),
        realignments=realignments,
        traces=traces,
    )


def throughput(log, duration_s=None, data_bits=None):
    """(1 - средний BER) · D · N_p / T_d в Гбит/с."""
    duration_s = log.duration_s if duration_s is None else duration_s
    data_bits = log.data_bits if data_bits is None else data_bits
    if duration_s <= 0:
        raise ArgumentError('Длительность T_d должна быть положительной.')
    if log.frame.empty:
        raise ArgumentError('Журнал сеанса пуст.')
    delivered = log.frame[log.frame['delivered']]
    if delivered.empty:
        return 0.0
    packets = len(delivered) * log.packets_per_entry
    mean_ber = float(delivered['ber'].mean())
    return (1 - mean_ber) * data_bits * packets / duration_s / 1e9
