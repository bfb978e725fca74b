import hashlib
import json

import numpy as np


def dbm_to_watts(value_dbm):
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


def db_to_linear(value_db):
    return 10.0 ** (value_db / 10.0)


def trial_rng(master_seed, *keys):
    """Генератор для одного испытания, не зависящий от порядка запуска."""
    return np.random.default_rng(
        np.random.SeedSequence([int(master_seed), *map(int, keys)])
    )


def _jsonable(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (set, frozenset, tuple)):
        return list(value)
    return str(value)


def config_hash(payload):
    canonical = json.dumps(
        payload, sort_keys=True, separators=(',', ':'), default=_jsonable
    )
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]
