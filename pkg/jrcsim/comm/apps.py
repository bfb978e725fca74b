from django.apps import AppConfig


class CommConfig(AppConfig):
    name = 'comm'
    verbose_name = 'Приёмник связи'
