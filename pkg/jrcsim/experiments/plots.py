"""PNG-графики по CSV экспериментов."""
import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

GOLDEN_RATIO = (np.sqrt(5) - 1.0) / 2.0
RMSE_PANELS = (
    ('rmse_range_m', 'СКО дальности, м'),
    ('rmse_azimuth_deg', 'СКО азимута, °'),
    ('rmse_velocity_mps', 'СКО скорости, м/с'),
)


def new_figure(width=8, columns=1):
    height = width * GOLDEN_RATIO / max(columns // 2, 1)
    return plt.subplots(1, columns, figsize=(width, height), squeeze=False)


def save(figure, path):
    figure.tight_layout()
    figure.savefig(path, dpi=120)
    plt.close(figure)
    return path


def plot_rmse(frame, path):
    figure, axes = new_figure(12, 3)
    for axis, (column, label) in zip(axes[0], RMSE_PANELS):
        for (waveform, channel), group in frame.groupby(
            ['waveform', 'channel']
        ):
            axis.plot(
                group['snr_db'], group[column], marker='o',
                label=f'{waveform}, {channel}',
            )
        axis.set_xlabel('SNR, дБ')
        axis.set_ylabel(label)
        axis.grid(True, alpha=0.3)
    axes[0][0].legend()
    return save(figure, path)


def plot_ber(frame, path):
    figure, axes = new_figure()
    axis = axes[0][0]
    for protocol, group in frame.groupby('protocol', sort=False):
        axis.semilogy(
            group['t_s'], np.maximum(group['ber'], 1e-6), label=protocol
        )
    axis.set_xlabel('t, с')
    axis.set_ylabel('BER')
    axis.set_ylim(1e-6, 1)
    axis.grid(True, which='both', alpha=0.3)
    axis.legend()
    return save(figure, path)


def plot_throughput(frame, path):
    figure, axes = new_figure()
    axis = axes[0][0]
    cells = frame[['trajectory', 'channel']].drop_duplicates()
    labels = [f'{row.trajectory}\n{row.channel}' for row in cells.itertuples()]
    protocols = list(dict.fromkeys(frame['protocol']))
    width = 0.8 / len(protocols)
    positions = np.arange(len(cells))
    for index, protocol in enumerate(protocols):
        values = [
            frame[
                (frame['trajectory'] == row.trajectory)
                & (frame['channel'] == row.channel)
                & (frame['protocol'] == protocol)
            ]['throughput_gbps'].mean()
            for row in cells.itertuples()
        ]
        axis.bar(positions + index * width, values, width, label=protocol)
    axis.set_xticks(positions + width * (len(protocols) - 1) / 2)
    axis.set_xticklabels(labels)
    axis.set_ylabel('Гбит/с')
    axis.legend()
    return save(figure, path)


def plot_ambiguity(amap, path):
    """Тепловая карта модуля карты неоднозначности в дБ."""
    figure, axes = new_figure()
    axis = axes[0][0]
    order = np.argsort(amap.azimuths_deg, kind='stable')
    magnitude = amap.magnitude_db()[:, order]
    image = axis.pcolormesh(
        amap.azimuths_deg[order], amap.ranges_m, magnitude,
        shading='auto', vmin=magnitude.max() - 60, vmax=magnitude.max(),
    )
    figure.colorbar(image, ax=axis, label='дБ')
    axis.set_xlabel('Азимут, °')
    axis.set_ylabel('Дальность, м')
    return save(figure, path)
