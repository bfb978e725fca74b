import pandas as pd

from experiments.checks import check_mc
from experiments.cli import ExperimentCommand, ExperimentResult, records
from experiments.config import Experiment, Waveform
from experiments.montecarlo import run_mc_rmse
from experiments.plots import plot_rmse
from experiments.reports import summary_report

SUMMARY_COLUMNS = [
    'waveform', 'channel', 'snr_db', 'rmse_range_m', 'rmse_azimuth_deg',
    'rmse_velocity_mps', 'detection_rate',
]


class Command(ExperimentCommand):
    help = 'СКО оценок дальности, азимута и скорости методом Монте-Карло'
    kind = 'mc_rmse'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--experiment', default=Experiment.MC_POINT.value,
            choices=[
                item.value for item in Experiment if item.is_monte_carlo
            ],
        )
        parser.add_argument(
            '--waveform', nargs='+', choices=[item.value for item in Waveform],
        )
        parser.add_argument(
            '--trajectory', choices=['tangential', 'radial'],
            help='Траектория протяжённой цели',
        )

    def experiment_name(self, options):
        return options['experiment']

    def overrides(self, options):
        return {
            'waveforms': options.get('waveform'),
            'trajectory': options.get('trajectory'),
        }

    def run(self, system, experiment, output, options):
        frames = [
            run_mc_rmse(system, experiment.replace(channel=channel))
            for channel in self.channels(experiment, options)
        ]
        frame = pd.concat(frames, ignore_index=True)
        name = experiment.experiment.value
        csv_path = output / f'{name}.csv'
        frame.to_csv(csv_path, index=False)
        png_path = plot_rmse(frame, output / f'{name}.png')
        return ExperimentResult(
            report=summary_report(name, frame, SUMMARY_COLUMNS),
            summary={'rows': records(frame)},
            checks=check_mc(frame),
            files=[csv_path, png_path],
        )
