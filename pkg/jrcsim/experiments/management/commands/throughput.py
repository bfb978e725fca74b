from channel.propagation import ChannelKind
from experiments.checks import check_throughput
from experiments.cli import ExperimentCommand, ExperimentResult, records
from experiments.config import Experiment
from experiments.plots import plot_throughput
from experiments.reports import summary_report
from experiments.sessions import THROUGHPUT_COLUMNS, run_throughput


class Command(ExperimentCommand):
    help = 'Пропускная способность по траекториям, каналам и протоколам'
    kind = 'throughput'
    experiment = Experiment.THROUGHPUT

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--duration', type=float, help='Секунды')
        parser.add_argument(
            '--interval', type=float, help='Шаг журнала, секунды'
        )
        parser.add_argument(
            '--trajectory', nargs='+', choices=['tangential', 'radial'],
        )

    def overrides(self, options):
        return {
            'session_duration': options.get('duration'),
            'log_interval': options.get('interval'),
        }

    def channels(self, experiment, options):
        """Без --channel считаются обе модели канала."""
        return [
            ChannelKind(item)
            for item in options.get('channel') or list(ChannelKind)
        ]

    def run(self, system, experiment, output, options):
        trajectories = options.get('trajectory') or ('tangential', 'radial')
        table = run_throughput(
            system, experiment, trajectories,
            self.channels(experiment, options),
        )
        csv_path = output / 'throughput.csv'
        table.to_csv(csv_path, index=False)
        png_path = plot_throughput(table, output / 'throughput.png')
        return ExperimentResult(
            report=summary_report(
                'Пропускная способность, Гбит/с', table,
                THROUGHPUT_COLUMNS[:-1],
            ),
            summary={'rows': records(table)},
            checks=check_throughput(table),
            files=[csv_path, png_path],
        )
