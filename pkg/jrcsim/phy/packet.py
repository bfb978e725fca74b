"""Сборка пакетов 802.11ad и их сохранение в виде I/Q-файлов."""
import json
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path

import numpy as np

from core.exceptions import ArgumentError
from phy.ldpc import INFO_BITS, LdpcCode
from phy.ofdm import SYMBOL_SAMPLES, encode_data, frame_samples
from phy.preamble import (
    PREAMBLE_SAMPLES, STF_SAMPLES, brf_samples, build_brf, build_preamble,
)
from phy.rate import filter_for
from sequences.golay import CANONICAL_SEED

logger = logging.getLogger(__name__)


class PacketKind(str, Enum):
    DOWNLINK = 'downlink'
    UPLINK = 'uplink'


@dataclass(frozen=True)
class Packet:
    samples: np.ndarray
    boundaries: dict
    trn_ranges: tuple
    kind: PacketKind
    n_sym: int
    brf_count: int
    scrambler_init: int
    payload_bits: np.ndarray
    seed: int
    sample_rate: float
    grids: np.ndarray = None

    @property
    def duration_seconds(self):
        return self.samples.size / self.sample_rate

    @property
    def preamble(self):
        start, stop = self.boundaries['stf'][0], self.boundaries['cef'][1]
        return self.samples[start:stop]

    def field(self, name):
        start, stop = self.boundaries[name]
        return self.samples[start:stop]


@lru_cache(maxsize=4)
def ldpc_code(iterations=20, normalization=0.75):
    return LdpcCode(iterations=iterations, normalization=normalization)


def code_for(config):
    return ldpc_code(config.ldpc_iterations, config.ldpc_normalization)


def packet_samples(n_sym, brf_count, config):
    return (
        PREAMBLE_SAMPLES
        + frame_samples(n_sym, config.wola_edge)
        + brf_samples(brf_count)
    )


def packet_duration(n_sym, brf_count, config):
    """Длительность пакета по его структуре, без построения отсчётов."""
    return packet_samples(n_sym, brf_count, config) / config.ofdm_rate


def build_packet(
    kind, n_sym, brf_count, config, payload_bits=None,
    seed=CANONICAL_SEED, scrambler_init=None, rng=None,
):
    """Преамбула, заголовок, данные и BRF с границами полей."""
    kind = PacketKind(kind)
    if n_sym < 1:
        raise ArgumentError('Пакет содержит хотя бы один символ данных.')
    rng = rng if rng is not None else np.random.default_rng(seed)
    if payload_bits is None:
        payload_bits = rng.integers(0, 2, n_sym * INFO_BITS, dtype=np.uint8)
    payload_bits = np.asarray(payload_bits, dtype=np.uint8)
    if scrambler_init is None:
        scrambler_init = int(rng.integers(1, 128))
    taps = filter_for(config)
    preamble = build_preamble(taps, seed=seed)
    frame = encode_data(
        payload_bits, scrambler_init, code_for(config), config.wola_edge,
        n_sym=n_sym, brf_count=brf_count,
    )
    brf = build_brf(brf_count, taps, seed=seed)
    samples = np.concatenate([preamble, frame.samples, brf.samples])
    header_start = PREAMBLE_SAMPLES
    data_start = header_start + SYMBOL_SAMPLES
    brf_start = PREAMBLE_SAMPLES + frame.samples.size
    boundaries = {
        'stf': (0, STF_SAMPLES),
        'cef': (STF_SAMPLES, PREAMBLE_SAMPLES),
        'header': (header_start, data_start),
        'data': (data_start, brf_start),
        'brf': (brf_start, samples.size),
    }
    for index, (start, stop) in enumerate(brf.agc_ranges):
        boundaries[f'agc_{index}'] = (brf_start + start, brf_start + stop)
    trn_ranges = tuple(
        (brf_start + start, brf_start + stop)
        for start, stop in brf.trn_ranges
    )
    logger.debug(
        'Пакет %s: %d символов, %d полей BRF, %d отсчётов',
        kind.value, n_sym, brf_count, samples.size,
    )
    return Packet(
        samples=samples,
        boundaries=boundaries,
        trn_ranges=trn_ranges,
        kind=kind,
        n_sym=frame.n_sym,
        brf_count=brf_count,
        scrambler_init=scrambler_init,
        payload_bits=payload_bits,
        seed=seed,
        sample_rate=config.ofdm_rate,
        grids=frame.grids,
    )


def write_packet(packet, path):
    """Чередующиеся I/Q float32 и JSON-описание рядом."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    interleaved = np.empty(2 * packet.samples.size, dtype=np.float32)
    interleaved[0::2] = packet.samples.real
    interleaved[1::2] = packet.samples.imag
    iq_path = path.with_suffix('.iq')
    interleaved.tofile(iq_path)
    metadata = {
        'kind': packet.kind.value,
        'n_sym': packet.n_sym,
        'brf_count': packet.brf_count,
        'scrambler_init': packet.scrambler_init,
        'seed': packet.seed,
        'sample_rate': packet.sample_rate,
        'samples': int(packet.samples.size),
        'boundaries': {
            name: list(bounds) for name, bounds in packet.boundaries.items()
        },
        'trn_ranges': [list(bounds) for bounds in packet.trn_ranges],
        'payload_bits': ''.join(map(str, packet.payload_bits.tolist())),
    }
    json_path = path.with_suffix('.json')
    json_path.write_text(json.dumps(metadata, indent=2))
    return iq_path, json_path


def read_packet(path):
    path = Path(path)
    metadata = json.loads(path.with_suffix('.json').read_text())
    raw = np.fromfile(path.with_suffix('.iq'), dtype=np.float32)
    samples = raw[0::2].astype(float) + 1j * raw[1::2].astype(float)
    if samples.size != metadata['samples']:
        raise ArgumentError('Размер I/Q-файла не совпадает с описанием.')
    return Packet(
        samples=samples,
        boundaries={
            name: tuple(bounds)
            for name, bounds in metadata['boundaries'].items()
        },
        trn_ranges=tuple(tuple(bounds) for bounds in metadata['trn_ranges']),
        kind=PacketKind(metadata['kind']),
        n_sym=metadata['n_sym'],
        brf_count=metadata['brf_count'],
        scrambler_init=metadata['scrambler_init'],
        payload_bits=np.array(
            [int(bit) for bit in metadata['payload_bits']], dtype=np.uint8
        ),
        seed=metadata['seed'],
        sample_rate=metadata['sample_rate'],
    )
