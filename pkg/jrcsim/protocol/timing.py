"""Длительность Stage 1 по структуре пакетов и времени обработки."""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import pandas as pd

from core.exceptions import ArgumentError
from phy.packet import packet_duration


class Protocol(str, Enum):
    STANDARD = 'standard'
    JRC_V1 = 'jrc_v1'
    JRC_V2 = 'jrc_v2'

    @classmethod
    def jrc(cls, version):
        versions = {1: cls.JRC_V1, 2: cls.JRC_V2}
        if version in versions:
            return versions[version]
        protocol = cls(version)
        if protocol is cls.STANDARD:
            raise ArgumentError('Версия JRC должна быть 1 или 2.')
        return protocol


class EventKind(str, Enum):
    TX_DL = 'tx_dl'
    TX_UL = 'tx_ul'
    TX_RADAR = 'tx_radar'
    IDLE = 'idle'
    PROC_RCP = 'proc_rcp'
    PROC_RSP = 'proc_rsp'
    PROC_DETECT = 'proc_detect'
    PROC_EXTRACT = 'proc_extract'
    PROC_CORR = 'proc_corr'
    ALIGNMENT_FAILED = 'alignment_failed'


class Chain(str, Enum):
    BS = 'bs'
    MU = 'mu'


BOTH = frozenset(Chain)

ROWS = (
    ('dl_packet', 'DL-пакет, мкс', 1e6),
    ('ul_packet', 'UL-пакет, мкс', 1e6),
    ('idle', 'Пауза между пакетами, мкс', 1e6),
    ('radar_waveform', 'Радарный импульс, мкс', 1e6),
    ('pri', 'Остаток периода повторения, мкс', 1e6),
    ('rcp_dl', 'RCP принятого DL, мс', 1e3),
    ('rcp_ul', 'RCP принятого UL, мс', 1e3),
    ('preamble_correlation', 'Корреляция преамбул DL, мс', 1e3),
    ('detection_unit', 'Блок разделения радар/связь, мс', 1e3),
    ('extraction', 'Выделение битов преамбулы, мс', 1e3),
    ('rsp', 'RSP по эхо-сигналам, мс', 1e3),
)


@dataclass(frozen=True)
class TraceEvent:
    kind: EventKind
    start_s: float
    duration_s: float
    chains: frozenset
    metadata: dict = field(default_factory=dict)

    @property
    def end_s(self):
        return self.start_s + self.duration_s


class Timeline:
    """События двух цепочек: выравнивание на BS и на MU."""

    def __init__(self):
        self.events = []
        self.clock = {chain: 0.0 for chain in Chain}

    def add(self, kind, duration_s, chains, row=None, **metadata):
        if duration_s <= 0:
            raise ArgumentError(
                f'Длительность события {kind} не положительна.'
            )
        chains = frozenset(chains)
        start = max(self.clock[chain] for chain in chains)
        event = TraceEvent(
            kind=EventKind(kind),
            start_s=start,
            duration_s=float(duration_s),
            chains=chains,
            metadata={'row': row, **metadata},
        )
        self.events.append(event)
        for chain in chains:
            self.clock[chain] = event.end_s
        return event

    def completion(self, chain):
        return self.clock[Chain(chain)]

    @property
    def stage1_duration_s(self):
        return max(self.clock.values())

    def frame(self):
        return pd.DataFrame(
            [
                {
                    'kind': event.kind.value,
                    'start_s': event.start_s,
                    'duration_s': event.duration_s,
                    'chains': '+'.join(sorted(c.value for c in event.chains)),
                    'row': event.metadata.get('row'),
                }
                for event in self.events
            ],
            columns=['kind', 'start_s', 'duration_s', 'chains', 'row'],
        )


def _radar_pulses(timeline, config, chains=BOTH):
    remainder = config.pulse_repetition_interval - config.radar_duration
    for pulse in range(1, config.pulses + 1):
        timeline.add(
            EventKind.TX_RADAR, config.radar_duration, chains,
            row='radar_waveform', pulse=pulse,
        )
        timeline.add(EventKind.IDLE, remainder, chains, row='pri')


def _rsp(timeline, config):
    times = config.processing_times
    timeline.add(EventKind.PROC_DETECT, times.detect, {Chain.BS},
                 row='detection_unit')
    timeline.add(EventKind.PROC_EXTRACT, times.extract, {Chain.BS},
                 row='extraction')
    timeline.add(EventKind.PROC_RSP, times.rsp, {Chain.BS}, row='rsp')


def _dl_sweep(timeline, config, n_sym, brf_count, chains):
    duration = packet_duration(n_sym, brf_count, config)
    for beam in range(config.mu_beams):
        if beam:
            timeline.add(
                EventKind.IDLE, config.inter_packet_idle, chains, row='idle'
            )
        timeline.add(
            EventKind.TX_DL, duration, chains, row='dl_packet', mu_beam=beam,
        )


def standard_timeline(config):
    """N DL-пакетов с M полями BRF, RCP на MU, UL и RCP на BS."""
    timeline = Timeline()
    times = config.processing_times
    _dl_sweep(
        timeline, config, config.standard_data_symbols, config.bs_beams, BOTH
    )
    for beam in range(config.mu_beams):
        timeline.add(EventKind.PROC_RCP, times.rcp_dl, BOTH, row='rcp_dl',
                     mu_beam=beam)
    timeline.add(
        EventKind.TX_UL, packet_duration(config.jrc_data_symbols, 0, config),
        {Chain.BS}, row='ul_packet',
    )
    timeline.add(EventKind.PROC_RCP, times.rcp_ul, {Chain.BS}, row='rcp_ul')
    return timeline


def jrc_v1_timeline(config):
    """Радар на BS; MU получает DL, отвечает UL с N полями BRF."""
    timeline = Timeline()
    times = config.processing_times
    dl = packet_duration(config.jrc_data_symbols, 0, config)
    _radar_pulses(timeline, config)
    _rsp(timeline, config)
    mu = {Chain.MU}
    timeline.add(EventKind.TX_DL, dl, mu, row='dl_packet')
    timeline.add(EventKind.PROC_RCP, times.rcp_dl, mu, row='rcp_dl')
    timeline.add(
        EventKind.TX_UL,
        packet_duration(config.jrc_data_symbols, config.mu_beams, config),
        mu, row='ul_packet',
    )
    timeline.add(EventKind.PROC_DETECT, times.detect, mu,
                 row='detection_unit')
    timeline.add(EventKind.PROC_RCP, times.rcp_ul, mu, row='rcp_ul')
    timeline.add(EventKind.TX_DL, dl, mu, row='dl_packet', informs=True)
    return timeline


def jrc_v2_timeline(config):
    """Радар на BS; MU сравнивает преамбулы N пакетов DL по своим лучам."""
    timeline = Timeline()
    _radar_pulses(timeline, config)
    _rsp(timeline, config)
    mu = {Chain.MU}
    _dl_sweep(timeline, config, config.jrc_data_symbols, 0, mu)
    timeline.add(
        EventKind.PROC_CORR, config.processing_times.preamble_corr, mu,
        row='preamble_correlation',
    )
    return timeline


BUILDERS = {
    Protocol.STANDARD: standard_timeline,
    Protocol.JRC_V1: jrc_v1_timeline,
    Protocol.JRC_V2: jrc_v2_timeline,
}


def stage1_timeline(protocol, config):
    return BUILDERS[Protocol(protocol)](config)


def multi_mu_stage1(protocol, count, config):
    """Stage 1 для count MU: стандарт выравнивает их по очереди."""
    if count < 1:
        raise ArgumentError('Нужен хотя бы один MU.')
    duration = stage1_timeline(protocol, config).stage1_duration_s
    if Protocol(protocol) is Protocol.STANDARD:
        return count * duration
    return duration


def packets_per_interval(config, interval_s, n_sym=None):
    """Сколько пакетов Stage 2 помещается в интервал журнала."""
    n_sym = n_sym or config.jrc_data_symbols
    period = packet_duration(n_sym, 0, config) + config.inter_packet_idle
    return max(1, int(np.floor(interval_s / period)))


def timing_table(config):
    """Строки таблицы времени выравнивания для трёх протоколов."""
    timelines = {
        protocol: stage1_timeline(protocol, config) for protocol in Protocol
    }
    records = []
    for key, label, scale in ROWS:
        record = {'row': key, 'label': label}
        for protocol, timeline in timelines.items():
            events = [
                item for item in timeline.events
                if item.metadata.get('row') == key
            ]
            record[f'{protocol.value}_duration'] = (
                events[0].duration_s * scale if events else np.nan
            )
            record[f'{protocol.value}_count'] = len(events)
            record[f'{protocol.value}_total'] = (
                sum(item.duration_s for item in events) * scale
            )
        records.append(record)
    for key, label, chain in (
        ('total_bs', 'Выравнивание на BS, мс', Chain.BS),
        ('total_mu', 'Выравнивание на MU, мс', Chain.MU),
        ('stage1', 'Stage 1 целиком, мс', None),
    ):
        record = {'row': key, 'label': label}
        for protocol, timeline in timelines.items():
            total = (
                timeline.stage1_duration_s if chain is None
                else timeline.completion(chain)
            )
            record[f'{protocol.value}_total'] = total * 1e3
        records.append(record)
    return pd.DataFrame(records)
