"""Текстовые сводки: время выравнивания и итоги экспериментов."""
import numpy as np

from phy.packet import packet_duration
from protocol.timing import Protocol, timing_table

HEADER = '{:<38}' + '{:>12}{:>6}{:>12}' * 3


def _cell(value, digits=3):
    if value is None or (isinstance(value, float) and np.isnan(value)):
        return '-'
    return f'{value:.{digits}f}'


def timing_report(config):
    """Таблица времени Stage 1 в виде выровненного текста."""
    table = timing_table(config)
    protocols = [item.value for item in Protocol]
    columns = []
    for name in protocols:
        columns.extend([name, 'N', 'всего'])
    lines = [HEADER.format('', *columns), '-' * 128]
    for _, row in table.iterrows():
        values = []
        for name in protocols:
            count = row.get(f'{name}_count')
            values.extend([
                _cell(row.get(f'{name}_duration')),
                '-' if count is None or np.isnan(count) else int(count),
                _cell(row.get(f'{name}_total')),
            ])
        lines.append(HEADER.format(row['label'], *values))
    standard = table.set_index('row').loc['stage1']
    speedup = standard['standard_total'] / standard['jrc_v2_total']
    lines.append('')
    lines.append(
        f'Ускорение выравнивания (standard / jrc_v2): {speedup:.2f}'
    )
    lines.append(
        'DL-пакет без BRF, 10 символов: '
        f'{packet_duration(config.jrc_data_symbols, 0, config) * 1e6:.2f} мкс'
    )
    return '\n'.join(lines) + '\n'


def summary_report(title, frame, columns):
    """Несколько столбцов итоговой таблицы в текстовом виде."""
    return f'{title}\n{frame[columns].to_string(index=False)}\n'
