"""Выборка рассеивателей в полярных координатах BS и сцены для Монте-Карло."""
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from core.exceptions import ArgumentError, ConfigurationError
from scene.targets import (
    Fluctuation, Target, TargetKind, Trajectory, car, clutter_target,
    pedestrian, point_target,
)

logger = logging.getLogger(__name__)

ASPECT_FLOOR = 0.3
SCENE_HALF_WIDTH = 30.0
MEAN_TARGET_COUNT = 2
MAX_RADIAL_SPEED = 30.0
RCS_CHOICES = (10.0, 1.0, 0.1, 0.01)
MIN_SPAWN_RANGE = 1.0


@dataclass(frozen=True)
class ScatterSample:
    range_m: float
    azimuth_deg: float
    radial_velocity_mps: float
    amplitude: complex


def as_rng(rng_seed):
    if isinstance(rng_seed, np.random.Generator):
        return rng_seed
    return np.random.default_rng(rng_seed)


def polar_geometry(position, velocity, bs_position, bs_boresight):
    """Дальность, азимут от оси BS и радиальная скорость (сближение > 0)."""
    relative = np.asarray(position, float) - np.asarray(bs_position, float)
    distance = np.linalg.norm(relative, axis=-1)
    if np.any(distance <= 0):
        raise ArgumentError('Рассеиватель совпадает с позицией BS.')
    boresight = np.asarray(bs_boresight, float)[:2]
    boresight = boresight / np.linalg.norm(boresight)
    right = np.array([boresight[1], -boresight[0], 0.0])
    sine = np.clip(relative @ right / distance, -1.0, 1.0)
    azimuth = np.degrees(np.arcsin(sine))
    radial_velocity = -(relative @ np.asarray(velocity, float)) / distance
    return distance, azimuth, radial_velocity


def aspect_gain(look, normals):
    if normals is None:
        return 1.0
    return np.maximum(np.abs(np.sum(look * normals, axis=-1)), ASPECT_FLOOR)


def sample_scene(target, t, rng_seed):
    """Полярные координаты и комплексные амплитуды всех рассеивателей."""
    rng = as_rng(rng_seed)
    trajectory = target.trajectory
    positions, rotation = target.scatterer_positions(t)
    distance, azimuth, radial_velocity = polar_geometry(
        positions, trajectory.velocity, trajectory.bs_position,
        trajectory.bs_boresight,
    )
    count = len(target.scatterers)
    mean_rcs = np.array([item.mean_rcs for item in target.scatterers])
    look = (np.asarray(trajectory.bs_position, float) - positions)
    look /= distance[:, np.newaxis]
    gains = np.ones(count)
    for index, item in enumerate(target.scatterers):
        if item.normal is not None:
            normal = rotation @ np.asarray(item.normal, float)
            gains[index] = aspect_gain(look[index], normal)
    if target.fluctuation is Fluctuation.SWERLING_1:
        amplitude = np.sqrt(mean_rcs / 2) * (
            rng.standard_normal(count) + 1j * rng.standard_normal(count)
        )
    else:
        amplitude = np.sqrt(mean_rcs) * np.exp(
            2j * np.pi * rng.random(count)
        )
    amplitude = amplitude * gains
    return [
        ScatterSample(
            range_m=float(distance[i]),
            azimuth_deg=float(azimuth[i]),
            radial_velocity_mps=float(radial_velocity[i]),
            amplitude=complex(amplitude[i]),
        )
        for i in range(count)
    ]


def ground_truth(target, t):
    """Координаты корня цели без флуктуаций."""
    trajectory = target.trajectory
    distance, azimuth, radial_velocity = polar_geometry(
        target.root(t)[np.newaxis], trajectory.velocity,
        trajectory.bs_position, trajectory.bs_boresight,
    )
    return float(distance[0]), float(azimuth[0]), float(radial_velocity[0])


def ground_truth_frame(target, times):
    rows = []
    for t in times:
        distance, azimuth, radial_velocity = ground_truth(target, t)
        rows.append({
            't': t,
            'range': distance,
            'azimuth': azimuth,
            'radial_velocity': radial_velocity,
        })
    return pd.DataFrame(
        rows, columns=['t', 'range', 'azimuth', 'radial_velocity']
    )


def spawn_point_target(rng_seed, name='target_0'):
    """Точечная цель в квадрате 60 × 60 м со случайной радиальной скоростью."""
    rng = as_rng(rng_seed)
    while True:
        x, y = rng.uniform(-SCENE_HALF_WIDTH, SCENE_HALF_WIDTH, size=2)
        distance = np.hypot(x, y)
        if distance >= MIN_SPAWN_RANGE:
            break
    radial_speed = rng.uniform(-MAX_RADIAL_SPEED, MAX_RADIAL_SPEED)
    direction = np.array([x, y]) / distance
    velocity = (*(-radial_speed * direction), 0.0)
    trajectory = Trajectory(
        start=(float(x), float(y), 0.0),
        velocity=tuple(float(v) for v in velocity),
        duration=1e-3,
        name='multi',
    )
    return point_target(
        trajectory, mean_rcs=float(rng.choice(RCS_CHOICES)), name=name
    )


def spawn_multi_target_scene(rng_seed):
    """Пуассоновское число точечных целей в квадрате 60 × 60 м вокруг BS."""
    rng = as_rng(rng_seed)
    count = max(1, int(rng.poisson(MEAN_TARGET_COUNT)))
    return [
        spawn_point_target(rng, name=f'target_{index}')
        for index in range(count)
    ]


BUILDERS = {
    TargetKind.POINT: lambda trajectory, rcs: point_target(trajectory, rcs),
    TargetKind.PEDESTRIAN: lambda trajectory, rcs: pedestrian(trajectory),
    TargetKind.CAR: lambda trajectory, rcs: car(trajectory),
}


def load_scene(path):
    """Сцена из JSON: позиция BS и список целей."""
    try:
        description = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as error:
        raise ConfigurationError(f'Не удалось прочитать сцену: {error}')
    bs_position = tuple(description.get('bs_position', (0.0, 0.0, 0.0)))
    bs_boresight = tuple(description.get('bs_boresight', (0.0, 1.0)))
    targets = []
    for item in description.get('targets', []):
        kind = TargetKind(item['kind'])
        rcs = float(item.get('mean_rcs', 1.0))
        if kind is TargetKind.CLUTTER:
            targets.append(clutter_target(
                item['start'], rcs, bs_position, bs_boresight
            ))
            continue
        trajectory = Trajectory(
            start=tuple(item['start']),
            velocity=tuple(item.get('velocity', (0.0, 0.0, 0.0))),
            duration=float(item.get('duration', 0.0)),
            bs_position=bs_position,
            bs_boresight=bs_boresight,
            name=item.get('trajectory', 'custom'),
        )
        targets.append(BUILDERS[kind](trajectory, rcs))
    logger.info('Загружена сцена из %s: %d целей', path, len(targets))
    return targets
