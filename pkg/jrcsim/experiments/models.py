from django.db import models

from core.models import CreatedModel


class ExperimentRun(CreatedModel):
    """Запись об одном запуске эксперимента."""

    class Kind(models.TextChoices):
        TIMING = 'timing', 'Длительность Stage 1'
        MC_RMSE = 'mc_rmse', 'СКО оценок радара'
        BER_SESSION = 'ber_session', 'BER во времени'
        THROUGHPUT = 'throughput', 'Пропускная способность'
        PACKET_DUMP = 'packet_dump', 'Выгрузка пакета'

    kind = models.CharField('Тип', max_length=32, choices=Kind.choices)
    experiment = models.CharField(
        'Эксперимент',
        max_length=32,
        help_text='mc_point, mc_multi, ber_trajectory и т. п.',
    )
    channel = models.CharField('Канал', max_length=16, default='free')
    seed = models.BigIntegerField('Начальное значение ГПСЧ')
    trials = models.PositiveIntegerField('Число испытаний', default=0)
    config_hash = models.CharField(
        'Хеш конфигурации', max_length=16, db_index=True
    )
    config = models.JSONField('Конфигурация', default=dict)
    summary = models.JSONField('Итоги', default=dict)
    output_dir = models.CharField('Каталог результатов', max_length=500)
    checks_passed = models.BooleanField(
        'Проверки пройдены',
        null=True,
        blank=True,
        help_text='Пусто, если проверки не запускались',
    )

    class Meta(CreatedModel.Meta):
        verbose_name = 'Запуск эксперимента'
        verbose_name_plural = 'Запуски экспериментов'

    def __str__(self):
        return f'{self.kind}/{self.experiment} [{self.config_hash}]'
