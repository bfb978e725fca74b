"""Скремблер x^7 + x^4 + 1 с 57-битным фиктивным заголовком."""
from functools import lru_cache

import numpy as np

from core.exceptions import ArgumentError

STATE_BITS = 7
PERIOD = 2 ** STATE_BITS - 1
DUMMY_HEADER_BITS = 57


@lru_cache(maxsize=PERIOD)
def _period(init):
    state = [(init >> i) & 1 for i in range(STATE_BITS)]
    sequence = []
    for _ in range(PERIOD):
        feedback = state[6] ^ state[3]
        sequence.append(feedback)
        state = [feedback] + state[:-1]
    period = np.array(sequence, dtype=np.uint8)
    period.setflags(write=False)
    return period


def check_init(init):
    if not 0 < int(init) <= PERIOD:
        raise ArgumentError(
            f'Ключ скремблера должен быть в диапазоне 1..{PERIOD}.'
        )
    return int(init)


def scrambling_sequence(init, length):
    return np.resize(_period(check_init(init)), length)


def scramble(bits, init):
    """Последовательность начинается после 57 битов фиктивного заголовка."""
    bits = np.asarray(bits, dtype=np.uint8)
    sequence = scrambling_sequence(init, DUMMY_HEADER_BITS + bits.size)
    return bits ^ sequence[DUMMY_HEADER_BITS:]


def descramble(bits, init):
    """Добавляет фиктивный заголовок, дескремблирует и отбрасывает его."""
    bits = np.asarray(bits, dtype=np.uint8)
    stream = np.concatenate([np.zeros(DUMMY_HEADER_BITS, np.uint8), bits])
    stream ^= scrambling_sequence(init, stream.size)
    return stream[DUMMY_HEADER_BITS:]
