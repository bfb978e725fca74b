import numpy as np
import pandas as pd

from experiments.checks import check_ber, first_delivery
from experiments.cli import ExperimentCommand, ExperimentResult
from experiments.config import Experiment
from experiments.plots import plot_ber
from experiments.sessions import run_ber_session
from protocol.session import session_target
from scene.sampling import ground_truth_frame


class Command(ExperimentCommand):
    help = 'BER во времени для движущегося MU'
    kind = 'ber_session'
    experiment = Experiment.BER_TRAJECTORY

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--trajectory', choices=['tangential', 'radial'],
        )
        parser.add_argument('--duration', type=float, help='Секунды')
        parser.add_argument(
            '--interval', type=float, help='Шаг журнала, секунды'
        )

    def overrides(self, options):
        return {
            'trajectory': options.get('trajectory'),
            'session_duration': options.get('duration'),
            'log_interval': options.get('interval'),
        }

    def run(self, system, experiment, output, options):
        frames = [
            run_ber_session(system, experiment.replace(channel=channel))
            for channel in self.channels(experiment, options)
        ]
        frame = pd.concat(frames, ignore_index=True)
        name = f'ber_{experiment.trajectory}'
        csv_path = output / f'{name}.csv'
        frame.to_csv(csv_path, index=False)
        truth_path = output / f'{experiment.trajectory}_truth.csv'
        times = np.arange(
            0.0, experiment.session_duration, experiment.log_interval
        )
        ground_truth_frame(
            session_target(experiment.trajectory), times
        ).to_csv(truth_path, index=False)
        png_path = plot_ber(
            frame[frame['channel'] == frame['channel'].iloc[0]],
            output / f'{name}.png',
        )
        starts = {
            protocol.value: first_delivery(frame, protocol.value)
            for protocol in experiment.protocols
        }
        report = '\n'.join(
            f'{protocol}: направленный луч с {start * 1e3:.1f} мс'
            for protocol, start in starts.items()
        ) + '\n'
        return ExperimentResult(
            report=report,
            summary={
                'first_delivery_s': {
                    key: None if np.isinf(value) else value
                    for key, value in starts.items()
                },
                'mean_ber': {
                    str(key): float(value) for key, value in
                    frame.groupby('protocol')['ber'].mean().items()
                },
            },
            checks=check_ber(frame),
            files=[csv_path, truth_path, png_path],
        )
