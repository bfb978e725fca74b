import numpy as np

from channel.propagation import ChannelModel
from experiments.cli import ExperimentCommand, ExperimentResult, records
from experiments.config import Experiment
from experiments.plots import plot_ambiguity
from phy.packet import build_packet, write_packet
from radar.cube import detections_frame, simulate_radar_cube
from radar.processing import GolayRangeProcessor, detect_targets
from scene.sampling import ScatterSample


class Command(ExperimentCommand):
    help = 'Отсчёты пакета в I/Q-файл и карта неоднозначности радара'
    kind = 'packet_dump'
    experiment = Experiment.PACKET_DUMP

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--kind', default='downlink', choices=['downlink', 'uplink'],
        )
        parser.add_argument('--n-sym', type=int, default=10)
        parser.add_argument('--brf', type=int, default=0)
        parser.add_argument(
            '--ambiguity', action='store_true',
            help='Карта неоднозначности и обнаружения для одной цели',
        )
        parser.add_argument('--range', type=float, default=20.0)
        parser.add_argument('--azimuth', type=float, default=15.0)
        parser.add_argument('--velocity', type=float, default=5.0)
        parser.add_argument('--rcs', type=float, default=10.0)

    def run(self, system, experiment, output, options):
        packet = build_packet(
            options['kind'], options['n_sym'], options['brf'], system,
            rng=np.random.default_rng(experiment.rng_seed),
        )
        stem = f'{options["kind"]}_{options["n_sym"]}_{options["brf"]}'
        files = list(write_packet(packet, output / stem))
        summary = {
            'samples': int(packet.samples.size),
            'duration_us': packet.duration_seconds * 1e6,
            'boundaries': {
                name: list(bounds)
                for name, bounds in packet.boundaries.items()
            },
        }
        report = (
            f'Пакет {options["kind"]}: {packet.samples.size} отсчётов, '
            f'{packet.duration_seconds * 1e6:.2f} мкс\n'
        )
        if options['ambiguity']:
            target = ScatterSample(
                range_m=options['range'], azimuth_deg=options['azimuth'],
                radial_velocity_mps=options['velocity'],
                amplitude=np.sqrt(options['rcs']),
            )
            processor = GolayRangeProcessor(system)
            cube = simulate_radar_cube(
                [target], system, ChannelModel(), experiment.rng_seed,
            )
            amap = processor.form_ambiguity(cube, 0)
            grid_path = output / 'ambiguity.csv'
            amap.to_frame().to_csv(grid_path, index=False)
            detections = detections_frame(
                detect_targets(cube, system, processor)
            )
            detections_path = output / 'detections.csv'
            detections.to_csv(detections_path, index=False)
            files.extend([
                grid_path, detections_path,
                plot_ambiguity(amap, output / 'ambiguity.png'),
            ])
            summary['detections'] = records(detections)
            report += detections.to_string(index=False) + '\n'
        return ExperimentResult(report=report, summary=summary, files=files)
