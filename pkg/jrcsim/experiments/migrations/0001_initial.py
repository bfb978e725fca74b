# Generated by Django 5.1.3 on 2026-10-19 12:00

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('id', models.AutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('created', models.DateTimeField(auto_now_add=True, db_index=True, verbose_name='Дата создания')),
                ('kind', models.CharField(choices=[('timing', 'Длительность Stage 1'), ('mc_rmse', 'СКО оценок радара'), ('ber_session', 'BER во времени'), ('throughput', 'Пропускная способность'), ('packet_dump', 'Выгрузка пакета')], max_length=32, verbose_name='Тип')),
                ('experiment', models.CharField(help_text='mc_point, mc_multi, ber_trajectory и т. п.', max_length=32, verbose_name='Эксперимент')),
                ('channel', models.CharField(default='free', max_length=16, verbose_name='Канал')),
                ('seed', models.BigIntegerField(verbose_name='Начальное значение ГПСЧ')),
                ('trials', models.PositiveIntegerField(default=0, verbose_name='Число испытаний')),
                ('config_hash', models.CharField(db_index=True, max_length=16, verbose_name='Хеш конфигурации')),
                ('config', models.JSONField(default=dict, verbose_name='Конфигурация')),
                ('summary', models.JSONField(default=dict, verbose_name='Итоги')),
                ('output_dir', models.CharField(max_length=500, verbose_name='Каталог результатов')),
                ('checks_passed', models.BooleanField(blank=True, help_text='Пусто, если проверки не запускались', null=True, verbose_name='Проверки пройдены')),
            ],
            options={
                'verbose_name': 'Запуск эксперимента',
                'verbose_name_plural': 'Запуски экспериментов',
                'ordering': ('-created',),
                'abstract': False,
            },
        ),
    ]
