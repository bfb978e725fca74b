import numpy as np

FAIL = '\033[91m'
ENDC = '\033[0m'


def colorize_msg(msg):
    return FAIL + msg + ENDC


def default_config(**overrides):
    """Конфигурация по умолчанию без обращения к settings."""
    from core.config import SystemConfig

    return SystemConfig(**overrides)


def silent_config(**overrides):
    """Конфигурация с пренебрежимо малым шумом приёмника."""
    overrides.setdefault('noise_floor_dbm', -300.0)
    return default_config(**overrides)


def random_bits(count, seed=0):
    return np.random.default_rng(seed).integers(0, 2, count, dtype=np.uint8)
