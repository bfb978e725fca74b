"""Комплементарные пары Голея и корреляционные примитивы."""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import signal

from core.exceptions import ArgumentError, ConfigurationError

SUPPORTED_LENGTHS = (64, 128, 512)
CANONICAL_SEED = 0


@dataclass(frozen=True)
class GolayPair:
    a: np.ndarray
    b: np.ndarray
    seed: int

    @property
    def length(self):
        return self.a.size


@dataclass(frozen=True)
class GolaySet:
    """Последовательности одного seed, используемые в полях пакета."""

    ga64: np.ndarray
    ga128: np.ndarray
    gb128: np.ndarray
    gu512: np.ndarray
    gv512: np.ndarray
    gv128: np.ndarray
    seed: int


def _candidates(order, seed):
    """Задержки и знаки рекурсии; для seed 0 это каноническая пара."""
    delays = 2 ** np.arange(order)
    if seed == CANONICAL_SEED:
        yield delays, np.ones(order, dtype=np.int64)
        return
    rng = np.random.default_rng(seed)
    while True:
        yield rng.permutation(delays), rng.choice(np.array([-1, 1]), order)


def _recursion(length, delays, signs):
    a = np.zeros(length, dtype=np.int64)
    a[0] = 1
    b = a.copy()
    for delay, sign in zip(delays, signs):
        shifted = np.roll(b, delay)
        a, b = a + sign * shifted, a - sign * shifted
    return a, b


def _same_up_to_sign(first, second):
    return np.array_equal(first, second) or np.array_equal(first, -second)


@lru_cache(maxsize=None)
def generate_golay_pair(length, seed=CANONICAL_SEED):
    """Рекурсивное построение пары с перестановкой задержек и знаков.

    Для seed != 0 наборы, повторяющие каноническую пару с точностью до
    знака, пропускаются; следующий берётся из того же потока seed.
    """
    if length not in SUPPORTED_LENGTHS:
        raise ConfigurationError(
            f'Длина {length} не поддерживается: {SUPPORTED_LENGTHS}'
        )
    if seed < 0:
        raise ArgumentError('seed должен быть неотрицательным.')
    order = int(np.log2(length))
    canonical = None
    if seed != CANONICAL_SEED:
        canonical = generate_golay_pair(length, CANONICAL_SEED)
    for delays, signs in _candidates(order, seed):
        a, b = _recursion(length, delays, signs)
        if canonical is None or not (
            _same_up_to_sign(a, canonical.a)
            or _same_up_to_sign(a, canonical.b)
        ):
            break
    a.setflags(write=False)
    b.setflags(write=False)
    return GolayPair(a=a, b=b, seed=seed)


@lru_cache(maxsize=None)
def golay_set(seed=CANONICAL_SEED):
    pair128 = generate_golay_pair(128, seed)
    pair512 = generate_golay_pair(512, seed)
    return GolaySet(
        ga64=generate_golay_pair(64, seed).a,
        ga128=pair128.a,
        gb128=pair128.b,
        gu512=pair512.a,
        gv512=pair512.b,
        gv128=pair128.b,
        seed=seed,
    )


def autocorrelation(sequence):
    """Апериодическая автокорреляция, лаги 0..L-1."""
    sequence = np.asarray(sequence)
    full = np.correlate(sequence, sequence, mode='full')
    return full[sequence.size - 1:]


def cross_correlate(x, g):
    """Линейная взаимная корреляция, элемент k соответствует задержке k."""
    x = np.asarray(x)
    g = np.asarray(g)
    if x.size == 0 or g.size == 0:
        raise ArgumentError('Пустой вход корреляции.')
    if x.size < g.size:
        raise ArgumentError('Сигнал короче опорной последовательности.')
    full = np.correlate(x.astype(complex), g.astype(complex), mode='full')
    return full[g.size - 1:]


def correlate_columns(x, g, n_lags):
    """Корреляция каждого столбца x с g для задержек 0..n_lags-1."""
    x = np.asarray(x, dtype=complex)
    g = np.asarray(g, dtype=complex)
    if x.ndim == 1:
        x = x[:, np.newaxis]
    if x.shape[0] < g.size:
        raise ArgumentError('Сигнал короче опорной последовательности.')
    kernel = np.conj(g[::-1])[:, np.newaxis]
    full = signal.fftconvolve(x, kernel, mode='full', axes=0)
    lags = full[g.size - 1:g.size - 1 + n_lags]
    if lags.shape[0] < n_lags:
        pad = np.zeros((n_lags - lags.shape[0], x.shape[1]), dtype=complex)
        lags = np.concatenate([lags, pad])
    return lags


def normalized_peak(x, g):
    """Максимум нормированной корреляции по задержкам, от 0 до 1."""
    x = np.asarray(x, dtype=complex)
    if x.ndim == 1:
        x = x[:, np.newaxis]
    g = np.asarray(g, dtype=complex)
    length = g.size
    if x.shape[0] < length:
        x = np.concatenate(
            [x, np.zeros((length - x.shape[0], x.shape[1]), dtype=complex)]
        )
    kernel = np.conj(g[::-1])[:, np.newaxis]
    corr = signal.fftconvolve(x, kernel, mode='valid', axes=0)
    energy = signal.fftconvolve(
        np.abs(x) ** 2, np.ones((length, 1)), mode='valid', axes=0
    )
    numerator = np.sum(np.abs(corr) ** 2, axis=1)
    denominator = np.vdot(g, g).real * np.sum(energy, axis=1)
    floor = 1e-9 * denominator.max() if denominator.size else 0.0
    if floor <= 0:
        return 0.0
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(denominator > floor, numerator / denominator, 0.0)
    return float(np.sqrt(np.clip(ratio.max(), 0.0, 1.0)))
