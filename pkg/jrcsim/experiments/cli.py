"""Общая часть команд manage.py для экспериментов."""
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from channel.propagation import ChannelKind
from core.exceptions import (
    ArgumentError, ConfigurationError, FramingError, SimulationError,
)
from experiments.checks import log_checks
from experiments.config import load_run_config, run_hash
from experiments.models import ExperimentRun

logger = logging.getLogger(__name__)

SIMULATION_ERRORS = (
    ArgumentError, ConfigurationError, FramingError, SimulationError,
)


@dataclass
class ExperimentResult:
    report: str
    summary: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    files: list = field(default_factory=list)


def records(frame):
    """Строки таблицы для JSON: NaN и inf заменяются на None."""
    frame = frame.replace([np.inf, -np.inf], np.nan).astype(object)
    return frame.where(frame.notna(), None).to_dict('records')


class ExperimentCommand(BaseCommand):
    kind = None
    experiment = None

    def add_arguments(self, parser):
        parser.add_argument('--config', help='JSON-файл конфигурации')
        parser.add_argument('--seed', type=int, help='Начальное значение')
        parser.add_argument('--trials', type=int, help='Число испытаний')
        parser.add_argument(
            '--channel', nargs='+',
            choices=[item.value for item in ChannelKind],
            help='Модель канала; можно указать обе',
        )
        parser.add_argument('--out', help='Каталог результатов')
        parser.add_argument(
            '--full-scale', action='store_true',
            help='Полное число испытаний из EXPERIMENTS',
        )
        parser.add_argument(
            '--check', action='store_true',
            help='Приёмочные проверки; при провале код возврата ненулевой',
        )
        parser.add_argument('--workers', type=int, help='Число процессов')

    def load(self, options):
        trials = options.get('trials')
        if options.get('full_scale') and trials is None:
            trials = getattr(settings, 'EXPERIMENTS', {}).get(
                'FULL_SCALE_TRIALS', 10000
            )
        channels = options.get('channel') or [None]
        return load_run_config(
            options.get('config'), self.experiment_name(options),
            trials=trials, rng_seed=options.get('seed'),
            output_dir=options.get('out'), workers=options.get('workers'),
            channel=channels[0], **self.overrides(options),
        )

    def experiment_name(self, options):
        return self.experiment

    def overrides(self, options):
        return {}

    def channels(self, experiment, options):
        return [
            ChannelKind(item) for item in options.get('channel') or [
                experiment.channel
            ]
        ]

    def run(self, system, experiment, output, options):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            system, experiment = self.load(options)
            output = Path(experiment.output_dir)
            output.mkdir(parents=True, exist_ok=True)
            result = self.run(system, experiment, output, options)
        except SIMULATION_ERRORS as error:
            raise CommandError(str(error)) from error
        passed = log_checks(result.checks) if options['check'] else None
        ExperimentRun.objects.create(
            kind=self.kind,
            experiment=experiment.experiment.value,
            channel=','.join(
                item.value for item in self.channels(experiment, options)
            ),
            seed=experiment.rng_seed,
            trials=experiment.trials,
            config_hash=run_hash(system, experiment),
            config={
                'system': system.as_dict(),
                'experiment': experiment.as_dict(),
            },
            summary=result.summary,
            output_dir=str(output),
            checks_passed=passed,
        )
        self.stdout.write(result.report)
        for path in result.files:
            self.stdout.write(f'Записан {path}')
        if options['check']:
            for check in result.checks:
                self.stdout.write(str(check))
            if not passed:
                raise CommandError('Приёмочные проверки не пройдены.')
