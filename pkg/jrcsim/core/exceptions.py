from django.core.exceptions import ImproperlyConfigured


class ConfigurationError(ImproperlyConfigured):
    """Недопустимые параметры системы или эксперимента."""


class ArgumentError(ValueError):
    """Недопустимый аргумент операции."""


class FramingError(ValueError):
    """Принятый поток короче пакета или заголовок не декодируется."""


class SimulationError(RuntimeError):
    """Нарушение внутренней согласованности модели."""
