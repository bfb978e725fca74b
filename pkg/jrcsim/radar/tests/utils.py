import numpy as np

from channel.propagation import ChannelModel
from radar.cube import simulate_radar_cube
from scene.sampling import ScatterSample

FREE_SPACE = ChannelModel()


def on_grid(config, range_bin, azimuth_bin, velocity=0.0, amplitude=1.0):
    """Рассеиватель точно в ячейке карты: бин дальности и бин ДПФ."""
    sine = azimuth_bin / config.azimuth_fft / config.bs_spacing
    return ScatterSample(
        range_m=range_bin * config.range_bin_m,
        azimuth_deg=float(np.degrees(np.arcsin(sine))),
        radial_velocity_mps=velocity,
        amplitude=amplitude,
    )


def noiseless_cube(config, scatterers, waveforms=None):
    return simulate_radar_cube(
        scatterers, config, FREE_SPACE, 0, noise_power=0.0,
        waveforms=waveforms,
    )
