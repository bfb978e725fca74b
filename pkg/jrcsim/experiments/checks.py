"""Приёмочные проверки результатов, запускаются флагом --check."""
import logging
from dataclasses import dataclass

import numpy as np

from phy.packet import packet_duration

logger = logging.getLogger(__name__)

STAGE1_TOTALS_MS = {'standard': 80.1, 'jrc_v1': 34.5, 'jrc_v2': 20.1}
STANDARD_DL_US = 29.73
SPEEDUP_RANGE = (3.8, 4.2)
# Допуск на шум Монте-Карло при проверке монотонности СКО.
MONOTONE_SLACK = 0.1


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ''

    def __str__(self):
        mark = 'OK ' if self.passed else 'FAIL'
        return f'[{mark}] {self.name}: {self.detail}'


def _within(value, expected, relative):
    return abs(value - expected) <= relative * expected


def check_timing(table, config):
    table = table.set_index('row')
    checks = []
    for protocol, expected in STAGE1_TOTALS_MS.items():
        value = table.loc['stage1', f'{protocol}_total']
        checks.append(Check(
            f'stage1 {protocol}', _within(value, expected, 0.01),
            f'{value:.2f} мс при ожидаемых {expected} мс',
        ))
    speedup = (
        table.loc['stage1', 'standard_total']
        / table.loc['stage1', 'jrc_v2_total']
    )
    checks.append(Check(
        'ускорение standard/jrc_v2',
        SPEEDUP_RANGE[0] <= speedup <= SPEEDUP_RANGE[1], f'{speedup:.2f}',
    ))
    dl = packet_duration(config.standard_data_symbols, config.bs_beams,
                         config) * 1e6
    checks.append(Check(
        'DL-пакет standard', _within(dl, STANDARD_DL_US, 0.02),
        f'{dl:.2f} мкс',
    ))
    return checks


def _monotone(values):
    values = np.asarray(values, float)
    values = values[~np.isnan(values)]
    rises = values[1:] - values[:-1]
    return bool(np.all(rises <= MONOTONE_SLACK * values[:-1] + 1e-9))


def check_mc(frame):
    checks = []
    for (waveform, channel), group in frame.groupby(['waveform', 'channel']):
        group = group.sort_values('snr_db')
        for column in ('rmse_range_m', 'rmse_azimuth_deg',
                       'rmse_velocity_mps'):
            checks.append(Check(
                f'{waveform}/{channel}: {column} убывает с SNR',
                _monotone(group[column]),
                ', '.join(f'{value:.3g}' for value in group[column]),
            ))
    point = frame[frame['experiment'] == 'mc_point']
    reference = point[
        (point['waveform'] == 'jrc') & (point['channel'] == 'free')
        & (point['snr_db'] == 20)
    ]
    if not reference.empty:
        row = reference.iloc[0]
        checks.append(Check(
            'СКО дальности при 20 дБ', row['rmse_range_m'] <= 0.17,
            f'{row["rmse_range_m"]:.3f} м',
        ))
        checks.append(Check(
            'СКО скорости при 20 дБ', row['rmse_velocity_mps'] <= 0.5,
            f'{row["rmse_velocity_mps"]:.3f} м/с',
        ))
    checks.extend(_rician_checks(point))
    checks.extend(_parity_checks(point))
    return checks


def _rician_checks(frame):
    channels = set(frame['channel'])
    if not {'free', 'rician'} <= channels:
        return []
    columns = ['waveform', 'snr_db']
    free = frame[frame['channel'] == 'free'].set_index(columns)
    rician = frame[frame['channel'] == 'rician'].set_index(columns)
    joined = free.join(rician, lsuffix='_free', rsuffix='_rician',
                       how='inner')
    worse = joined['rmse_range_m_rician'] >= joined['rmse_range_m_free']
    return [Check(
        'Райс не лучше свободного пространства', bool(worse.all()),
        f'{int(worse.sum())} из {len(worse)} точек',
    )]


def _parity_checks(frame):
    if set(frame['waveform']) != {'jrc', 'fmcw'}:
        return []
    checks = []
    high = frame[frame['snr_db'] >= 15]
    for (channel, snr_db), group in high.groupby(['channel', 'snr_db']):
        rows = group.set_index('waveform')
        for column in ('rmse_range_m', 'rmse_azimuth_deg',
                       'rmse_velocity_mps'):
            ratio = rows.loc['jrc', column] / rows.loc['fmcw', column]
            checks.append(Check(
                f'JRC/ЛЧМ {channel} {snr_db:g} дБ {column}',
                bool(0.5 <= ratio <= 2.0), f'{ratio:.2f}',
            ))
    return checks


def first_delivery(frame, protocol):
    rows = frame[(frame['protocol'] == protocol) & frame['delivered']]
    return float(rows['t_s'].min()) if not rows.empty else np.inf


def check_ber(frame):
    standard = first_delivery(frame, 'standard')
    checks = []
    for protocol in ('jrc_v1', 'jrc_v2'):
        if protocol not in set(frame['protocol']):
            continue
        start = first_delivery(frame, protocol)
        checks.append(Check(
            f'{protocol} выходит на направленный луч втрое раньше',
            bool(standard >= 3 * start),
            f'{start * 1e3:.1f} мс против {standard * 1e3:.1f} мс',
        ))
    return checks


def check_throughput(table):
    rates = table.set_index(['trajectory', 'channel', 'protocol'])[
        'throughput_gbps'
    ]
    checks = []
    try:
        tangential = rates.loc[('tangential', 'free')]
        radial = rates.loc[('radial', 'free')]
    except KeyError:
        return checks
    if not set(STAGE1_TOTALS_MS) <= set(tangential.index):
        return checks
    checks.append(Check(
        'касательная: jrc_v2 не хуже 2 × standard',
        bool(tangential['jrc_v2'] >= 2 * tangential['standard']),
        f'{tangential["jrc_v2"]:.3f} против {tangential["standard"]:.3f}',
    ))
    checks.append(Check(
        'jrc_v1 и jrc_v2 в пределах 5 %',
        _within(tangential['jrc_v1'], tangential['jrc_v2'], 0.05),
        f'{tangential["jrc_v1"]:.3f} и {tangential["jrc_v2"]:.3f}',
    ))
    checks.append(Check(
        'радиальный выигрыш меньше касательного',
        bool(
            radial['jrc_v2'] - radial['standard']
            < tangential['jrc_v2'] - tangential['standard']
        ),
    ))
    return checks


def log_checks(checks):
    for check in checks:
        if check.passed:
            logger.info('%s', check)
        else:
            logger.warning('%s', check)
    return all(check.passed for check in checks)
