"""Цели, траектории и параметрические кластеры рассеивателей."""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from core.exceptions import ArgumentError

PEDESTRIAN_SPEED = 1.5
CAR_SPEED = 10.0


class TargetKind(str, Enum):
    POINT = 'point'
    PEDESTRIAN = 'pedestrian'
    CAR = 'car'
    CLUTTER = 'clutter'


class Fluctuation(str, Enum):
    SWERLING_1 = 'swerling1'
    PHASE_ONLY = 'phase'


@dataclass(frozen=True)
class Scatterer:
    """Смещение относительно корня в связанной системе: x вперёд, z вверх."""

    offset: tuple
    mean_rcs: float
    normal: tuple = None

    def __post_init__(self):
        if self.mean_rcs <= 0:
            raise ArgumentError('ЭПР рассеивателя должна быть положительной.')


@dataclass(frozen=True)
class Trajectory:
    start: tuple
    velocity: tuple = (0.0, 0.0, 0.0)
    duration: float = 0.0
    bs_position: tuple = (0.0, 0.0, 0.0)
    bs_boresight: tuple = (0.0, 1.0)
    name: str = 'static'

    def position(self, t):
        if not 0 <= t <= self.duration + 1e-12:
            raise ArgumentError(
                f'Момент {t} вне траектории длительностью {self.duration}.'
            )
        return np.asarray(self.start, float) + t * np.asarray(
            self.velocity, float
        )

    @property
    def heading(self):
        vx, vy = self.velocity[0], self.velocity[1]
        if vx == 0 and vy == 0:
            return 0.0
        return float(np.arctan2(vy, vx))

    @classmethod
    def tangential(cls, speed=PEDESTRIAN_SPEED, duration=None):
        """Движение вдоль x на расстоянии 10 м перед BS."""
        duration = 10.0 / speed if duration is None else duration
        return cls(
            start=(-5.0, 10.0, 0.0),
            velocity=(speed, 0.0, 0.0),
            duration=duration,
            name='tangential',
        )

    @classmethod
    def radial(cls, speed=PEDESTRIAN_SPEED, duration=None):
        """Удаление от BS вдоль её оси."""
        duration = 10.0 / speed if duration is None else duration
        return cls(
            start=(-3.0, 15.0, 0.0),
            velocity=(speed, 0.0, 0.0),
            duration=duration,
            bs_position=(-13.0, 15.0, 0.0),
            bs_boresight=(1.0, 0.0),
            name='radial',
        )

    @classmethod
    def static(cls, position, bs_position=(0.0, 0.0, 0.0),
               bs_boresight=(0.0, 1.0), duration=0.0):
        return cls(
            start=tuple(position),
            duration=duration,
            bs_position=tuple(bs_position),
            bs_boresight=tuple(bs_boresight),
        )


@dataclass(frozen=True)
class Target:
    kind: TargetKind
    scatterers: tuple
    trajectory: Trajectory
    fluctuation: Fluctuation = Fluctuation.SWERLING_1
    name: str = field(default='')

    def root(self, t):
        return self.trajectory.position(t)

    def scatterer_positions(self, t):
        angle = self.trajectory.heading
        rotation = np.array([
            [np.cos(angle), -np.sin(angle), 0.0],
            [np.sin(angle), np.cos(angle), 0.0],
            [0.0, 0.0, 1.0],
        ])
        offsets = np.array([item.offset for item in self.scatterers], float)
        return self.root(t) + offsets @ rotation.T, rotation


# Имя, смещение (x, y, z) и средняя ЭПР частей тела.
PEDESTRIAN_PARTS = (
    ('head', (0.00, 0.00, 1.70), 0.04),
    ('neck', (0.00, 0.00, 1.55), 0.02),
    ('chest', (0.08, 0.00, 1.35), 0.10),
    ('upper_back', (-0.08, 0.00, 1.35), 0.10),
    ('abdomen', (0.08, 0.00, 1.10), 0.08),
    ('lumbar', (-0.06, 0.00, 1.10), 0.08),
    ('pelvis', (0.00, 0.00, 0.95), 0.08),
    ('l_shoulder', (0.00, 0.20, 1.45), 0.03),
    ('r_shoulder', (0.00, -0.20, 1.45), 0.03),
    ('l_upper_arm', (0.00, 0.24, 1.30), 0.02),
    ('r_upper_arm', (0.00, -0.24, 1.30), 0.02),
    ('l_elbow', (0.00, 0.26, 1.15), 0.02),
    ('r_elbow', (0.00, -0.26, 1.15), 0.02),
    ('l_forearm', (0.04, 0.27, 1.02), 0.02),
    ('r_forearm', (0.04, -0.27, 1.02), 0.02),
    ('l_hand', (0.06, 0.28, 0.85), 0.01),
    ('r_hand', (0.06, -0.28, 0.85), 0.01),
    ('l_hip', (0.00, 0.12, 0.92), 0.04),
    ('r_hip', (0.00, -0.12, 0.92), 0.04),
    ('l_thigh', (0.03, 0.12, 0.72), 0.04),
    ('r_thigh', (0.03, -0.12, 0.72), 0.04),
    ('l_knee', (0.05, 0.11, 0.50), 0.02),
    ('r_knee', (0.05, -0.11, 0.50), 0.02),
    ('l_shin', (0.02, 0.11, 0.28), 0.02),
    ('r_shin', (0.02, -0.11, 0.28), 0.02),
    ('l_foot', (0.10, 0.10, 0.05), 0.01),
    ('r_foot', (0.10, -0.10, 0.05), 0.01),
)

CAR_LENGTH = 4.5
CAR_WIDTH = 1.8
CAR_HEIGHT = 1.5


def _outward(offset):
    horizontal = np.array([offset[0], offset[1], 0.0])
    norm = np.linalg.norm(horizontal)
    if norm == 0:
        return (1.0, 0.0, 0.0)
    return tuple(horizontal / norm)


def pedestrian_scatterers():
    return tuple(
        Scatterer(offset=offset, mean_rcs=rcs, normal=_outward(offset))
        for _, offset, rcs in PEDESTRIAN_PARTS
    )


def car_scatterers():
    """Борта, торцы, крыша и колёса кузова 4.5 × 1.8 × 1.5 м."""
    half_length, half_width = CAR_LENGTH / 2, CAR_WIDTH / 2
    scatterers = []
    for x in np.linspace(-2.0, 2.0, 9):
        for side in (1.0, -1.0):
            for z in (0.5, 1.0):
                scatterers.append(Scatterer(
                    (float(x), side * half_width, z), 0.5, (0.0, side, 0.0)
                ))
    for face in (1.0, -1.0):
        for y in (-0.6, 0.0, 0.6):
            for z in (0.5, 0.9):
                scatterers.append(Scatterer(
                    (face * half_length, y, z), 0.5, (face, 0.0, 0.0)
                ))
    for x in (-0.8, 0.0, 0.8):
        for y in (-0.4, 0.4):
            scatterers.append(Scatterer(
                (x, y, CAR_HEIGHT), 0.3, (0.0, 0.0, 1.0)
            ))
    for x in (-1.4, 1.4):
        for side in (1.0, -1.0):
            scatterers.append(Scatterer(
                (x, side * half_width, 0.3), 0.2, (0.0, side, 0.0)
            ))
    return tuple(scatterers)


def point_target(trajectory, mean_rcs=1.0, name='point'):
    return Target(
        kind=TargetKind.POINT,
        scatterers=(Scatterer((0.0, 0.0, 0.0), mean_rcs),),
        trajectory=trajectory,
        name=name,
    )


def clutter_target(position, mean_rcs=1.0, bs_position=(0.0, 0.0, 0.0),
                   bs_boresight=(0.0, 1.0)):
    return Target(
        kind=TargetKind.CLUTTER,
        scatterers=(Scatterer((0.0, 0.0, 0.0), mean_rcs),),
        trajectory=Trajectory.static(
            position, bs_position, bs_boresight, duration=1e9
        ),
        name='clutter',
    )


def pedestrian(trajectory, fluctuation=Fluctuation.SWERLING_1):
    return Target(
        kind=TargetKind.PEDESTRIAN,
        scatterers=pedestrian_scatterers(),
        trajectory=trajectory,
        fluctuation=fluctuation,
        name='pedestrian',
    )


def car(trajectory, fluctuation=Fluctuation.SWERLING_1):
    return Target(
        kind=TargetKind.CAR,
        scatterers=car_scatterers(),
        trajectory=trajectory,
        fluctuation=fluctuation,
        name='car',
    )
