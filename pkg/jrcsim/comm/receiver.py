"""Приёмник пакета: синхронизация, ДПФ, оценка канала, MMSE, LDPC."""
import logging
from dataclasses import dataclass, replace

import numpy as np
from scipy import signal

from core.exceptions import ArgumentError, FramingError
from phy.ldpc import CODEWORD_BITS
from phy.ofdm import (
    CYCLIC_PREFIX, DATA_BINS, DATA_SUBCARRIERS, ENERGY_SCALE, FFT_SIZE,
    HEADER_KEY, PILOT_BINS, PILOT_SUBCARRIERS, PILOT_VALUES, SYMBOL_SAMPLES,
    USED_SUBCARRIERS, parse_header, q_matrix,
)
from phy.packet import code_for
from phy.preamble import build_preamble
from phy.rate import filter_for
from phy.scrambler import descramble
from sequences.golay import CANONICAL_SEED

logger = logging.getLogger(__name__)

SYNC_SEARCH_SAMPLES = 1024
CELL_NOISE_SCALE = USED_SUBCARRIERS.size / FFT_SIZE


@dataclass(frozen=True)
class DecodedPayload:
    bits: np.ndarray
    ber: float
    per_symbol_evm: list
    header_ok: bool
    parity_ok: bool = True
    header: object = None
    snr_db: float = float('nan')


@dataclass(frozen=True)
class EqualizedSymbols:
    """Выход MMSE и то, что нужно для мягкого демодулятора."""

    values: np.ndarray
    bias: np.ndarray
    noise: np.ndarray
    erased: np.ndarray

    def rows(self, index):
        return EqualizedSymbols(
            values=self.values[index],
            bias=self.bias[index],
            noise=self.noise[index],
            erased=self.erased[index],
        )

    @property
    def unbiased(self):
        with np.errstate(divide='ignore', invalid='ignore'):
            return np.where(self.bias > 0, self.values / self.bias, 0.0)


def cell_noise_var(noise_var):
    """Дисперсия шума в ячейке ДПФ при дисперсии на отсчёт noise_var."""
    return noise_var * CELL_NOISE_SCALE


def measured_snr_db(channel_est, noise_var):
    """Отношение сигнал/шум по оценке канала на поднесущих данных."""
    power = float(np.mean(np.abs(channel_est) ** 2))
    if noise_var <= 0:
        return float('inf')
    return float(10 * np.log10(max(power, 1e-300) / cell_noise_var(noise_var)))


def synchronize(rx, config, seed=CANONICAL_SEED,
                max_delay=SYNC_SEARCH_SAMPLES):
    """Начало пакета по максимуму корреляции с преамбулой."""
    rx = np.asarray(rx, dtype=complex)
    reference = build_preamble(filter_for(config), seed=seed)
    segment = rx[:max_delay + reference.size]
    if segment.size < reference.size:
        raise FramingError('Принятый поток короче преамбулы.')
    corr = signal.correlate(segment, reference, mode='valid', method='fft')
    offset = int(np.argmax(np.abs(corr)))
    logger.debug('Синхронизация: смещение %d отсчётов', offset)
    return offset


def ofdm_demod(samples, n_sym):
    """Заголовок и n_sym символов: снятие CP и 512-точечное ДПФ."""
    samples = np.asarray(samples, dtype=complex)
    count = n_sym + 1
    if samples.size < count * SYMBOL_SAMPLES:
        raise FramingError(
            f'Нужно {count * SYMBOL_SAMPLES} отсчётов, '
            f'получено {samples.size}.'
        )
    symbols = samples[:count * SYMBOL_SAMPLES].reshape(count, SYMBOL_SAMPLES)
    body = symbols[:, CYCLIC_PREFIX:]
    return np.fft.fft(body, axis=1, norm='ortho') / ENERGY_SCALE


def extract_cells(grid):
    grid = np.atleast_2d(grid)
    return grid[:, DATA_BINS], grid[:, PILOT_BINS]


def estimate_channel(pilot_cells):
    """LS по пилотам, усреднение по символам пакета и линейная интерполяция.

    За пределами крайних пилотов оценка продолжается константой.
    """
    pilot_cells = np.atleast_2d(pilot_cells)
    ls = np.mean(pilot_cells / PILOT_VALUES, axis=0)
    real = np.interp(DATA_SUBCARRIERS, PILOT_SUBCARRIERS, ls.real)
    imag = np.interp(DATA_SUBCARRIERS, PILOT_SUBCARRIERS, ls.imag)
    return real + 1j * imag


def equalize_mmse(cells, channel_est, noise_var, symbol_energy=1.0):
    """y·conj(h)/(|h|² + σ²/E_s); при σ² = 0 это zero-forcing."""
    if noise_var < 0:
        raise ArgumentError('Дисперсия шума не может быть отрицательной.')
    cells = np.atleast_2d(cells)
    channel_est = np.broadcast_to(channel_est, cells.shape)
    power = np.abs(channel_est) ** 2
    denominator = power + noise_var / symbol_energy
    erased = denominator == 0
    if erased.any():
        logger.warning('Стёрто ячеек: %d', int(erased.sum()))
    safe = np.where(erased, 1.0, denominator)
    values = np.where(erased, 0.0, cells * np.conj(channel_est) / safe)
    bias = np.where(erased, 1.0, power / safe)
    noise = np.full(cells.shape, np.inf)
    np.divide(noise_var, power, out=noise, where=power > 0)
    return EqualizedSymbols(
        values=values, bias=bias, noise=noise, erased=erased,
    )


def hard_decision(symbols):
    symbols = np.asarray(symbols)
    return (
        np.where(symbols.real < 0, -1.0, 1.0)
        + 1j * np.where(symbols.imag < 0, -1.0, 1.0)
    ) / np.sqrt(2)


def qpsk_llr(symbols, noise):
    """Точные LLR QPSK; положительное значение соответствует биту 0."""
    with np.errstate(divide='ignore', invalid='ignore'):
        scale = -2.0 * np.sqrt(2.0) / np.maximum(noise, 1e-300)
    llr = np.stack(
        [scale * symbols.real, scale * symbols.imag], axis=-1
    ).reshape(symbols.shape[0], -1)
    return np.nan_to_num(llr, nan=0.0, posinf=0.0, neginf=0.0)


def _derotate(equalized, key):
    symbols = equalized.unbiased * np.conj(q_matrix(key))
    return symbols, np.where(equalized.erased, np.inf, equalized.noise)


def demod_decode(equalized, scrambler_init, n_payload_bits, code,
                 reference_bits=None):
    """Мягкая демодуляция, min-sum LDPC, дескремблирование, снятие паддинга."""
    symbols, noise = _derotate(equalized, scrambler_init)
    llr = qpsk_llr(symbols, noise)
    if llr.shape[1] != CODEWORD_BITS:
        raise ArgumentError('Символ содержит не 336 ячеек данных.')
    info, converged = code.decode(llr)
    parity_ok = bool(np.all(converged))
    if not parity_ok:
        logger.debug(
            'LDPC не сошёлся в %d символах', int(np.sum(~converged))
        )
    bits = descramble(info.reshape(-1), scrambler_init)[:n_payload_bits]
    evm = np.sqrt(
        np.mean(np.abs(symbols - hard_decision(symbols)) ** 2, axis=1)
    )
    ber = 0.0
    if reference_bits is not None:
        reference_bits = np.asarray(reference_bits, dtype=np.uint8)
        if reference_bits.size != bits.size:
            raise ArgumentError('Длина эталона не совпадает с полезной '
                                'нагрузкой.')
        if bits.size:
            ber = float(np.mean(bits != reference_bits))
    return DecodedPayload(
        bits=bits,
        ber=ber,
        per_symbol_evm=evm.tolist(),
        header_ok=True,
        parity_ok=parity_ok,
    )


def decode_header(equalized, code):
    """Поля заголовка из первого символа или None, если CRC не совпал."""
    symbols, noise = _derotate(equalized.rows(slice(0, 1)), HEADER_KEY)
    info, _ = code.decode(qpsk_llr(symbols, noise))
    try:
        return parse_header(info[0])
    except FramingError:
        return None


def receive_packet(rx, packet, config, noise_var=None, offset=None,
                   code=None):
    """Полный приём пакета; при ошибке заголовка берутся метаданные пакета."""
    code = code or code_for(config)
    noise_var = config.noise_power_w if noise_var is None else noise_var
    rx = np.asarray(rx, dtype=complex)
    if offset is None:
        offset = synchronize(rx, config, seed=packet.seed)
    start = offset + packet.boundaries['header'][0]
    grid = ofdm_demod(rx[start:], packet.n_sym)
    data, pilots = extract_cells(grid)
    channel = estimate_channel(pilots)
    equalized = equalize_mmse(data, channel, cell_noise_var(noise_var))
    header = decode_header(equalized, code)
    if header is None or not header.scrambler_init:
        header = None
        logger.warning('Заголовок не декодирован, используются метаданные')
        scrambler_init = packet.scrambler_init
        length = packet.payload_bits.size
    else:
        scrambler_init = header.scrambler_init
        length = header.payload_length
    if length != packet.payload_bits.size:
        logger.warning('Длина из заголовка %d не совпала с пакетом', length)
        length = packet.payload_bits.size
    payload = demod_decode(
        equalized.rows(slice(1, None)), scrambler_init, length, code,
        reference_bits=packet.payload_bits,
    )
    return replace(
        payload, header_ok=header is not None, header=header,
        snr_db=measured_snr_db(channel, noise_var),
    )
