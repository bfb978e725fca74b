import dataclasses
from dataclasses import dataclass, field, fields

from django.conf import settings
from scipy.constants import speed_of_light

from core.exceptions import ConfigurationError
from core.utils import dbm_to_watts

RADAR_WAVEFORM_SAMPLES = 768
MAX_DUTY_CYCLE = 0.505


@dataclass(frozen=True)
class ProcessingTimes:
    """Длительности обработки на стороне BS и MU, секунды."""

    rcp_dl: float = 16e-3
    rcp_ul: float = 16e-3
    detect: float = 2.5e-3
    extract: float = 1.6e-3
    rsp: float = 16e-3
    preamble_corr: float = 4.5e-3

    def __post_init__(self):
        for item in fields(self):
            if getattr(self, item.name) < 0:
                raise ConfigurationError(
                    f'Время обработки {item.name} не может быть '
                    f'отрицательным.'
                )


@dataclass(frozen=True)
class SystemConfig:
    """Параметры приёмопередатчика, антенн, обработки и протоколов."""

    carrier_frequency: float = 60e9
    chip_rate: float = 1.76e9
    ofdm_rate: float = 2.64e9
    pulse_repetition_interval: float = 0.58e-6
    pulses: int = 2
    bs_elements: int = 32
    mu_elements: int = 4
    bs_beams: int = 32
    mu_beams: int = 4
    bs_spacing: float = 0.5
    mu_spacing: float = 0.5
    codebook_max_angle: float = 60.0
    tx_power_dbm: float = 15.0
    radar_tx_power_dbm: float = 46.0
    noise_floor_dbm: float = -71.7
    filter_taps: int = 33
    filter_cutoff: float = 0.88e9
    wola_edge: int = 32
    ldpc_iterations: int = 20
    ldpc_normalization: float = 0.75
    range_bins: int = 512
    azimuth_fft: int = 256
    clean_threshold: float = 0.15
    clean_max_iter: int = 20
    clean_min_snr_db: float = 15.0
    range_gate_bins: int = 12
    azimuth_gate_bins: int = 12
    min_radial_velocity: float = 0.3
    classify_threshold: float = 0.5
    fmcw_slope: float = 600e12
    fmcw_fft: int = 8192
    inter_packet_idle: float = 1e-6
    standard_data_symbols: int = 20
    jrc_data_symbols: int = 10
    realign_margin_db: float = 6.0
    beam_detection_snr_db: float = 10.0
    processing_times: ProcessingTimes = field(default_factory=ProcessingTimes)

    def __post_init__(self):
        if abs(self.ofdm_rate - 1.5 * self.chip_rate) > 1e-6 * self.ofdm_rate:
            raise ConfigurationError(
                'Частота OFDM должна быть в 1.5 раза выше чиповой.'
            )
        if self.radar_duration / self.pulse_repetition_interval > (
            MAX_DUTY_CYCLE
        ):
            raise ConfigurationError(
                'Скважность радарных импульсов превышает 50%.'
            )
        if self.pulses < 2:
            raise ConfigurationError('Нужно не меньше двух импульсов.')
        if self.filter_taps % 2 == 0:
            raise ConfigurationError(
                'Число отводов фильтра передискретизации должно быть '
                'нечётным.'
            )
        if self.bs_elements < 1 or self.mu_elements < 1:
            raise ConfigurationError('Пустая антенная решётка.')
        if self.azimuth_fft < self.bs_elements or (
            self.azimuth_fft & (self.azimuth_fft - 1)
        ):
            raise ConfigurationError(
                'Размер азимутального БПФ должен быть степенью двойки '
                'не меньше числа элементов.'
            )
        if not 0 < self.clean_threshold < 1:
            raise ConfigurationError('Порог CLEAN должен быть в (0, 1).')
        if self.range_gate_bins < 1 or self.azimuth_gate_bins < 1:
            raise ConfigurationError('Ворота кластеризации меньше бина.')

    @classmethod
    def from_settings(cls, **overrides):
        """Собирает конфигурацию из settings.JRC_SIMULATION."""
        values = {
            key.lower(): value
            for key, value in getattr(settings, 'JRC_SIMULATION', {}).items()
        }
        values.update(overrides)
        return cls.from_dict(values)

    @classmethod
    def from_dict(cls, values):
        known = {item.name for item in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ConfigurationError(
                f'Неизвестные параметры системы: {sorted(unknown)}'
            )
        values = dict(values)
        times = values.get('processing_times')
        if isinstance(times, dict):
            try:
                values['processing_times'] = ProcessingTimes(**times)
            except TypeError as error:
                raise ConfigurationError(str(error)) from error
        return cls(**values)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def as_dict(self):
        return dataclasses.asdict(self)

    @property
    def wavelength(self):
        return speed_of_light / self.carrier_frequency

    @property
    def chip_period(self):
        return 1.0 / self.chip_rate

    @property
    def sample_period(self):
        return 1.0 / self.ofdm_rate

    @property
    def range_bin_m(self):
        return speed_of_light / (2.0 * self.chip_rate)

    @property
    def max_unambiguous_range(self):
        return speed_of_light * self.pulse_repetition_interval / 2.0

    @property
    def radar_duration(self):
        return RADAR_WAVEFORM_SAMPLES / self.ofdm_rate

    @property
    def noise_power_w(self):
        return dbm_to_watts(self.noise_floor_dbm)

    @property
    def tx_power_w(self):
        return dbm_to_watts(self.tx_power_dbm)

    @property
    def radar_tx_power_w(self):
        return dbm_to_watts(self.radar_tx_power_dbm)
