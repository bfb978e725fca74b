"""LDPC-код 802.11ad скорости 3/4 (672, 504)."""
import logging
from functools import lru_cache

import numpy as np
from scipy import sparse

from core.exceptions import ArgumentError, SimulationError

logger = logging.getLogger(__name__)

LIFTING = 42
CODEWORD_BITS = 672
INFO_BITS = 504
LLR_LIMIT = 50.0

# Таблица сдвигов кода 3/4 из 802.11ad; -1 означает нулевой блок.
# Блок со сдвигом k: единичная матрица, столбцы сдвинуты вправо на k.
BASE_MATRIX = np.array([
    [35, 19, 41, 22, 40, 41, 39, 6, 28, 18, 17, 3, 28, -1, -1, -1],
    [29, 30, 0, 8, 33, 22, 17, 4, 27, 28, 20, 27, 24, 23, -1, -1],
    [37, 31, 18, 23, 11, 21, 6, 20, 32, 9, 12, 29, -1, 0, 13, -1],
    [25, 22, 4, 34, 31, 3, 14, 15, 4, -1, 14, 18, 13, 13, 22, 24],
])
INFO_BLOCKS = INFO_BITS // LIFTING


def _block(shift):
    if shift < 0:
        return np.zeros((LIFTING, LIFTING), dtype=np.uint8)
    return np.roll(np.eye(LIFTING, dtype=np.uint8), shift, axis=1)


@lru_cache(maxsize=1)
def parity_check_matrix():
    matrix = np.block(
        [[_block(shift) for shift in row] for row in BASE_MATRIX]
    )
    matrix.setflags(write=False)
    return matrix


class LdpcCode:
    """Кодер и нормализованный min-sum декодер."""

    def __init__(self, iterations=20, normalization=0.75):
        self.iterations = iterations
        self.normalization = normalization
        self.H = parity_check_matrix()
        self.checks = self.H.shape[0]
        self._data_part = self.H[:, :INFO_BITS].astype(np.int64)
        rows, cols = np.nonzero(self.H)
        degrees = np.bincount(rows, minlength=self.checks)
        width = degrees.max()
        self._neighbours = np.zeros((self.checks, width), dtype=np.int64)
        self._mask = np.zeros((self.checks, width), dtype=bool)
        position = 0
        for check, degree in enumerate(degrees):
            self._neighbours[check, :degree] = cols[position:position + degree]
            self._mask[check, :degree] = True
            position += degree
        edges = self._neighbours[self._mask]
        self._incidence = sparse.csr_matrix(
            (np.ones(edges.size), (np.arange(edges.size), edges)),
            shape=(edges.size, CODEWORD_BITS),
        )

    def syndrome(self, codewords):
        codewords = np.atleast_2d(codewords).astype(np.int64)
        return (codewords @ self.H.T.astype(np.int64)) % 2

    def encode(self, info):
        info = np.atleast_2d(np.asarray(info, dtype=np.uint8))
        if info.shape[1] != INFO_BITS:
            raise ArgumentError(f'Ожидалось {INFO_BITS} информационных бит.')
        checks = (info.astype(np.int64) @ self._data_part.T) % 2
        checks = checks.reshape(info.shape[0], -1, LIFTING)
        parity = np.zeros_like(checks)
        shifts = BASE_MATRIX[:, INFO_BLOCKS:]
        # Блок i проверок вводит ровно один новый блок чётности i.
        for row in range(shifts.shape[0]):
            residue = checks[:, row].copy()
            for column in range(row):
                if shifts[row, column] >= 0:
                    residue ^= np.roll(
                        parity[:, column], -shifts[row, column], axis=1
                    )
            parity[:, row] = np.roll(residue, shifts[row, row], axis=1)
        codewords = np.concatenate(
            [info, parity.reshape(info.shape[0], -1).astype(np.uint8)], axis=1
        )
        if self.syndrome(codewords).any():
            raise SimulationError('Кодовое слово не удовлетворяет H·c = 0.')
        return codewords

    def decode(self, llr):
        """LLR > 0 означает бит 0. Возвращает биты и признак сходимости."""
        llr = np.clip(
            np.atleast_2d(np.asarray(llr, dtype=float)), -LLR_LIMIT, LLR_LIMIT
        )
        if llr.shape[1] != CODEWORD_BITS:
            raise ArgumentError(f'Ожидалось {CODEWORD_BITS} значений LLR.')
        batch = llr.shape[0]
        width = self._neighbours.shape[1]
        positions = np.arange(width)
        check_messages = np.zeros((batch, self.checks, width))
        total = llr.copy()
        hard = (total < 0).astype(np.uint8)
        for iteration in range(self.iterations):
            variable_messages = total[:, self._neighbours] - check_messages
            variable_messages = np.where(
                self._mask, variable_messages, np.inf
            )
            signs = np.where(variable_messages < 0, -1.0, 1.0)
            magnitudes = np.abs(variable_messages)
            order = np.argsort(magnitudes, axis=2)
            smallest = np.take_along_axis(magnitudes, order[..., :1], axis=2)
            second = np.take_along_axis(magnitudes, order[..., 1:2], axis=2)
            is_smallest = positions == order[..., :1]
            check_messages = (
                self.normalization
                * np.prod(signs, axis=2, keepdims=True) * signs
                * np.where(is_smallest, second, smallest)
            )
            check_messages = np.where(self._mask, check_messages, 0.0)
            incoming = self._incidence.T @ check_messages[:, self._mask].T
            total = llr + np.asarray(incoming).T
            hard = (total < 0).astype(np.uint8)
            if not self.syndrome(hard).any():
                logger.debug('LDPC сошёлся за %d итераций', iteration + 1)
                break
        converged = ~self.syndrome(hard).any(axis=1)
        return hard[:, :INFO_BITS], converged
