"""Параметры запуска эксперимента и загрузка их из JSON-файла."""
import json
from dataclasses import asdict, dataclass, fields, replace
from enum import Enum
from pathlib import Path

from django.conf import settings

from channel.propagation import ChannelKind, ChannelModel
from core.config import SystemConfig
from core.exceptions import ConfigurationError
from core.utils import config_hash
from protocol.timing import Protocol


class Experiment(str, Enum):
    MC_POINT = 'mc_point'
    MC_MULTI = 'mc_multi'
    MC_PEDESTRIAN = 'mc_pedestrian'
    MC_CAR = 'mc_car'
    BER_TRAJECTORY = 'ber_trajectory'
    THROUGHPUT = 'throughput'
    TIMING = 'timing'
    PACKET_DUMP = 'packet_dump'

    @property
    def is_monte_carlo(self):
        return self.value.startswith('mc_')


class Waveform(str, Enum):
    JRC = 'jrc'
    FMCW = 'fmcw'


TRAJECTORIES = ('tangential', 'radial')


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: Experiment = Experiment.MC_POINT
    trials: int = 1000
    snr_grid_db: tuple = (0, 5, 10, 15, 20, 25)
    channel: ChannelKind = ChannelKind.FREE_SPACE
    protocols: tuple = tuple(Protocol)
    waveforms: tuple = tuple(Waveform)
    trajectory: str = 'tangential'
    rng_seed: int = 2024
    output_dir: str = 'results'
    workers: int = 1
    session_duration: float = 1.0
    log_interval: float = 2e-3
    rician_k_db: float = 7.0

    def __post_init__(self):
        try:
            object.__setattr__(
                self, 'experiment', Experiment(self.experiment)
            )
            object.__setattr__(self, 'channel', ChannelKind(self.channel))
            object.__setattr__(self, 'protocols', tuple(
                Protocol(item) for item in self.protocols
            ))
            object.__setattr__(self, 'waveforms', tuple(
                Waveform(item) for item in self.waveforms
            ))
        except ValueError as error:
            raise ConfigurationError(str(error)) from error
        object.__setattr__(
            self, 'snr_grid_db', tuple(float(x) for x in self.snr_grid_db)
        )
        if self.trials < 1:
            raise ConfigurationError('Нужно хотя бы одно испытание.')
        if self.experiment.is_monte_carlo and not self.snr_grid_db:
            raise ConfigurationError('Пустая сетка SNR.')
        if self.trajectory not in TRAJECTORIES:
            raise ConfigurationError(
                f'Неизвестная траектория {self.trajectory}.'
            )
        if self.workers < 1:
            raise ConfigurationError('Число процессов меньше одного.')
        if self.session_duration <= 0 or self.log_interval <= 0:
            raise ConfigurationError(
                'Длительность сеанса и шаг журнала должны быть '
                'положительными.'
            )

    @classmethod
    def from_settings(cls, experiment, **overrides):
        """Значения по умолчанию из settings.EXPERIMENTS."""
        defaults = getattr(settings, 'EXPERIMENTS', {})
        values = {
            'experiment': experiment,
            'trials': defaults.get('TRIALS', 1000),
            'snr_grid_db': defaults.get('SNR_GRID_DB', (0, 5, 10, 15, 20, 25)),
            'rng_seed': defaults.get('SEED', 2024),
            'output_dir': str(defaults.get('OUTPUT_DIR', 'results')),
            'workers': defaults.get('WORKERS', 1),
            'session_duration': defaults.get('SESSION_DURATION', 1.0),
            'log_interval': defaults.get('SESSION_LOG_INTERVAL', 2e-3),
            'rician_k_db': defaults.get('RICIAN_K_DB', 7.0),
        }
        values.update(
            {key: value for key, value in overrides.items()
             if value is not None}
        )
        return cls.from_dict(values)

    @classmethod
    def from_dict(cls, values):
        known = {item.name for item in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ConfigurationError(
                f'Неизвестные параметры эксперимента: {sorted(unknown)}'
            )
        return cls(**values)

    def replace(self, **changes):
        return replace(self, **changes)

    def channel_model(self, kind=None):
        return ChannelModel.from_settings(
            kind or self.channel, rician_k_db=self.rician_k_db
        )

    def as_dict(self):
        values = asdict(self)
        values['experiment'] = self.experiment.value
        values['channel'] = self.channel.value
        values['protocols'] = [item.value for item in self.protocols]
        values['waveforms'] = [item.value for item in self.waveforms]
        values['snr_grid_db'] = list(self.snr_grid_db)
        return values


def run_hash(system, experiment):
    """Хеш пары конфигураций; попадает в каждую строку CSV."""
    values = experiment.as_dict()
    values.pop('output_dir')
    values.pop('workers')
    return config_hash({'system': system.as_dict(), 'experiment': values})


def load_run_config(path, experiment, **overrides):
    """Файл вида {"system": {...}, "experiment": {...}}.

    Параметры командной строки перекрывают значения из файла.
    """
    system_values, experiment_values = {}, {}
    if path:
        try:
            document = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as error:
            raise ConfigurationError(
                f'Не удалось прочитать конфигурацию {path}: {error}'
            ) from error
        unknown = set(document) - {'system', 'experiment'}
        if unknown:
            raise ConfigurationError(
                f'Неизвестные разделы конфигурации: {sorted(unknown)}'
            )
        system_values = document.get('system', {})
        experiment_values = document.get('experiment', {})
    experiment_values = {**experiment_values, **{
        key: value for key, value in overrides.items() if value is not None
    }}
    experiment_values['experiment'] = experiment
    system = SystemConfig.from_settings(**system_values)
    return system, ExperimentConfig.from_settings(**experiment_values)
