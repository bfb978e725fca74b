from experiments.checks import check_timing
from experiments.cli import ExperimentCommand, ExperimentResult, records
from experiments.config import Experiment
from experiments.reports import timing_report
from protocol.timing import timing_table


class Command(ExperimentCommand):
    help = 'Длительность Stage 1 для трёх протоколов'
    kind = 'timing'
    experiment = Experiment.TIMING

    def run(self, system, experiment, output, options):
        table = timing_table(system)
        report = timing_report(system)
        csv_path = output / 'timing.csv'
        text_path = output / 'timing.txt'
        table.to_csv(csv_path, index=False)
        text_path.write_text(report)
        stage1 = table.set_index('row').loc['stage1']
        return ExperimentResult(
            report=report,
            summary={
                'stage1_ms': {
                    name: float(stage1[f'{name}_total'])
                    for name in ('standard', 'jrc_v1', 'jrc_v2')
                },
                'rows': records(table),
            },
            checks=check_timing(table, system),
            files=[csv_path, text_path],
        )
