"""BER во времени и пропускная способность трёх протоколов."""
import logging

import pandas as pd

from channel.propagation import ChannelKind
from experiments.config import TRAJECTORIES, run_hash
from protocol.session import run_session, session_target, throughput

logger = logging.getLogger(__name__)

BER_COLUMNS = [
    't_s', 'protocol', 'ber', 'snr_db', 'stage', 'delivered', 'channel',
    'trajectory', 'config_hash',
]
THROUGHPUT_COLUMNS = [
    'trajectory', 'channel', 'protocol', 'throughput_gbps',
    'delivered_packets', 'realignments', 'config_hash',
]


def _session(protocol, system, experiment, trajectory, channel):
    """Все протоколы получают одинаковое начальное значение ГПСЧ."""
    return run_session(
        protocol, session_target(trajectory), experiment.session_duration,
        system, experiment.channel_model(channel),
        rng_seed=experiment.rng_seed, log_interval=experiment.log_interval,
    )


def run_ber_session(system, experiment):
    digest = run_hash(system, experiment)
    frames = []
    for protocol in experiment.protocols:
        log = _session(
            protocol, system, experiment, experiment.trajectory,
            experiment.channel,
        )
        frame = log.frame.rename(columns={'t': 't_s'})
        frame['channel'] = experiment.channel.value
        frame['trajectory'] = experiment.trajectory
        frame['config_hash'] = digest
        frames.append(frame[BER_COLUMNS])
        logger.info(
            '%s: %d повторных выравниваний', protocol.value,
            log.realignments,
        )
    return pd.concat(frames, ignore_index=True)


def run_throughput(system, experiment, trajectories=TRAJECTORIES,
                   channels=tuple(ChannelKind)):
    """Таблица Гбит/с и числа доставленных пакетов."""
    digest = run_hash(system, experiment)
    rows = []
    for trajectory in trajectories:
        for channel in channels:
            for protocol in experiment.protocols:
                log = _session(
                    protocol, system, experiment, trajectory, channel
                )
                rows.append({
                    'trajectory': trajectory,
                    'channel': ChannelKind(channel).value,
                    'protocol': protocol.value,
                    'throughput_gbps': throughput(log),
                    'delivered_packets': log.delivered_packets,
                    'realignments': log.realignments,
                    'config_hash': digest,
                })
    return pd.DataFrame(rows, columns=THROUGHPUT_COLUMNS)
