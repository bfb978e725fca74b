"""OFDM-часть пакета: поднесущие, QPSK, Q-матрица, ОБПФ, WOLA, заголовок."""
import binascii
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from core.exceptions import ArgumentError, ConfigurationError, FramingError
from phy.ldpc import INFO_BITS
from phy.scrambler import check_init, scramble

FFT_SIZE = 512
CYCLIC_PREFIX = 128
SYMBOL_SAMPLES = FFT_SIZE + CYCLIC_PREFIX
EDGE_SUBCARRIER = 177
PILOT_SUBCARRIERS = np.arange(-150, 151, 20)
PILOT_VALUES = np.array(
    [1, -1, 1, 1, -1, 1, -1, -1, 1, 1, 1, -1, -1, 1, -1, 1], dtype=complex
)
USED_SUBCARRIERS = np.concatenate([
    np.arange(-EDGE_SUBCARRIER, -1), np.arange(2, EDGE_SUBCARRIER + 1)
])
DATA_SUBCARRIERS = np.setdiff1d(USED_SUBCARRIERS, PILOT_SUBCARRIERS)
DATA_BINS = DATA_SUBCARRIERS % FFT_SIZE
PILOT_BINS = PILOT_SUBCARRIERS % FFT_SIZE
ENERGY_SCALE = np.sqrt(FFT_SIZE / USED_SUBCARRIERS.size)

MCS_QPSK_3_4 = 18
HEADER_KEY = 0
HEADER_FIELDS = (
    ('scrambler_init', 7),
    ('mcs', 5),
    ('payload_length', 18),
    ('n_sym', 10),
    ('brf_count', 7),
)
CRC_BITS = 16


@dataclass(frozen=True)
class HeaderFields:
    scrambler_init: int
    mcs: int
    payload_length: int
    n_sym: int
    brf_count: int


def qpsk_map(bits):
    """Пары битов на точки (±1 ± j)/sqrt(2), бит 0 даёт -1."""
    bits = np.asarray(bits, dtype=float).reshape(-1, 2)
    return ((2 * bits[:, 0] - 1) + 1j * (2 * bits[:, 1] - 1)) / np.sqrt(2)


@lru_cache(maxsize=None)
def _q_phases(key):
    rng = np.random.default_rng(key)
    phases = np.exp(1j * rng.uniform(0, 2 * np.pi, DATA_SUBCARRIERS.size))
    phases.setflags(write=False)
    return phases


def q_matrix(key):
    """Диагональ унитарной Q-матрицы для заданного ключа."""
    return _q_phases(int(key))


def map_subcarriers(data_symbols):
    """336 символов данных и 16 пилотов в сетку из 512 поднесущих."""
    data_symbols = np.atleast_2d(data_symbols)
    grid = np.zeros((data_symbols.shape[0], FFT_SIZE), dtype=complex)
    grid[:, DATA_BINS] = data_symbols
    grid[:, PILOT_BINS] = PILOT_VALUES
    return grid


def ofdm_modulate(grid):
    """ОБПФ с единичной средней мощностью и циклический префикс."""
    body = np.fft.ifft(np.atleast_2d(grid), axis=1, norm='ortho')
    body = body * ENERGY_SCALE
    return np.concatenate([body[:, -CYCLIC_PREFIX:], body], axis=1)


def wola_window(edge):
    ramp = 0.5 * (1 - np.cos(np.pi * (np.arange(edge) + 0.5) / edge))
    return ramp, ramp[::-1]


def wola_overlap(symbols, edge):
    """Символы с циклическим суффиксом, перекрытие фронтов внутри CP."""
    if not 0 <= edge <= CYCLIC_PREFIX:
        raise ConfigurationError('Фронт WOLA не может превышать CP.')
    symbols = np.atleast_2d(symbols)
    count = symbols.shape[0]
    output = np.zeros(count * SYMBOL_SAMPLES + edge, dtype=complex)
    if edge == 0:
        output[:] = symbols.reshape(-1)
        return output
    rising, falling = wola_window(edge)
    for index, symbol in enumerate(symbols):
        extended = np.concatenate(
            [symbol, symbol[CYCLIC_PREFIX:CYCLIC_PREFIX + edge]]
        )
        extended[:edge] *= rising
        extended[-edge:] *= falling
        start = index * SYMBOL_SAMPLES
        output[start:start + extended.size] += extended
    return output


def frame_samples(n_sym, edge):
    return (n_sym + 1) * SYMBOL_SAMPLES + edge


def _to_bits(value, width):
    return [(value >> (width - 1 - i)) & 1 for i in range(width)]


def _from_bits(bits):
    value = 0
    for bit in bits:
        value = (value << 1) | int(bit)
    return value


def _crc(bits):
    packed = np.packbits(np.asarray(bits, np.uint8)).tobytes()
    return binascii.crc_hqx(packed, 0)


def header_bits(fields):
    bits = []
    for name, width in HEADER_FIELDS:
        value = getattr(fields, name)
        if not 0 <= value < 2 ** width:
            raise ArgumentError(f'Поле заголовка {name} вне диапазона.')
        bits.extend(_to_bits(value, width))
    bits.extend(_to_bits(_crc(bits), CRC_BITS))
    padded = np.zeros(INFO_BITS, dtype=np.uint8)
    padded[:len(bits)] = bits
    return padded


def parse_header(bits):
    bits = np.asarray(bits, dtype=np.uint8)
    values = {}
    position = 0
    for name, width in HEADER_FIELDS:
        values[name] = _from_bits(bits[position:position + width])
        position += width
    crc = _from_bits(bits[position:position + CRC_BITS])
    if crc != _crc(bits[:position]):
        raise FramingError('Контрольная сумма заголовка не совпала.')
    return HeaderFields(**values)


@dataclass(frozen=True)
class EncodedFrame:
    samples: np.ndarray
    grids: np.ndarray
    codewords: np.ndarray
    n_sym: int
    header: HeaderFields


def encode_symbols(codewords, key):
    """Кодовые слова в частотные сетки: QPSK, Q-матрица, поднесущие."""
    data = qpsk_map(codewords).reshape(codewords.shape[0], -1) * q_matrix(key)
    return map_subcarriers(data)


def encode_data(bits, scrambler_init, code, edge, n_sym=None, brf_count=0):
    """Заголовок и символы данных: скремблер, LDPC, QPSK, Q, ОБПФ, WOLA."""
    scrambler_init = check_init(scrambler_init)
    bits = np.asarray(bits, dtype=np.uint8).reshape(-1)
    needed = max(1, -(-bits.size // INFO_BITS))
    n_sym = needed if n_sym is None else n_sym
    if n_sym < needed:
        raise ArgumentError(
            f'{bits.size} бит не помещаются в {n_sym} символов.'
        )
    padded = np.zeros(n_sym * INFO_BITS, dtype=np.uint8)
    padded[:bits.size] = bits
    scrambled = scramble(padded, scrambler_init).reshape(n_sym, INFO_BITS)
    codewords = code.encode(scrambled)
    header = HeaderFields(
        scrambler_init=scrambler_init,
        mcs=MCS_QPSK_3_4,
        payload_length=bits.size,
        n_sym=n_sym,
        brf_count=brf_count,
    )
    header_codeword = code.encode(header_bits(header))
    grids = np.concatenate([
        encode_symbols(header_codeword, HEADER_KEY),
        encode_symbols(codewords, scrambler_init),
    ])
    samples = wola_overlap(ofdm_modulate(grids), edge)
    return EncodedFrame(
        samples=samples,
        grids=grids,
        codewords=np.concatenate([header_codeword, codewords]),
        n_sym=n_sym,
        header=header,
    )
