"""Линейные антенные решётки BS и MU."""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from core.exceptions import ArgumentError, ConfigurationError


class ArrayRole(str, Enum):
    BS = 'bs'
    MU = 'mu'


@dataclass(frozen=True)
class ArrayGeometry:
    """Эквидистантная решётка; шаг задан в длинах волн."""

    n_elements: int
    spacing: float = 0.5
    role: ArrayRole = ArrayRole.BS
    element_gain_dbi: float = 0.0

    def __post_init__(self):
        if self.n_elements < 1:
            raise ConfigurationError('В решётке нет элементов.')
        if self.spacing <= 0:
            raise ConfigurationError('Шаг решётки должен быть положительным.')

    @classmethod
    def for_bs(cls, config):
        return cls(config.bs_elements, config.bs_spacing, ArrayRole.BS)

    @classmethod
    def for_mu(cls, config):
        return cls(config.mu_elements, config.mu_spacing, ArrayRole.MU)

    def element_gain(self, theta_deg):
        """Диаграмма одиночного элемента; по умолчанию изотропная."""
        return 10.0 ** (self.element_gain_dbi / 10.0) * np.ones_like(
            np.asarray(theta_deg, dtype=float)
        )

    def steering_vector(self, theta_deg):
        theta = np.asarray(theta_deg, dtype=float)
        if np.any(np.abs(theta) > 90):
            raise ArgumentError(f'Угол {theta_deg} вне [-90°, 90°].')
        phase = 2 * np.pi * self.spacing * np.sin(np.radians(theta))
        elements = np.arange(self.n_elements)
        return np.exp(1j * np.multiply.outer(phase, elements))

    def quasi_omni_weights(self):
        """Активен только нулевой элемент: ровная диаграмма по азимуту."""
        weights = np.zeros(self.n_elements, dtype=complex)
        weights[0] = 1.0
        return weights

    def directional_weights(self, theta_deg):
        return np.conj(self.steering_vector(theta_deg)) / np.sqrt(
            self.n_elements
        )

    def array_gain(self, weights, theta_deg):
        """Комплексный коэффициент решётки w^T u(theta)."""
        return self.steering_vector(theta_deg) @ np.asarray(weights)

    def codebook(self, n_beams, max_angle_deg=60.0):
        """Направления заранее заданных лучей, равномерно по sin(theta)."""
        if n_beams < 1:
            raise ConfigurationError('Кодовая книга пуста.')
        if n_beams == 1:
            return np.zeros(1)
        limit = np.sin(np.radians(max_angle_deg))
        return np.degrees(np.arcsin(np.linspace(-limit, limit, n_beams)))

    def beam_weights(self, angles_deg):
        return np.stack([self.directional_weights(a) for a in angles_deg])

    def best_beam(self, angles_deg, theta_deg):
        """Номер луча кодовой книги с наибольшим усилением на theta."""
        gains = np.abs(
            self.beam_weights(angles_deg) @ self.steering_vector(theta_deg)
        )
        return int(np.argmax(gains))
