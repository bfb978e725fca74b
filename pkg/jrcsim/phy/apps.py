from django.apps import AppConfig


class PhyConfig(AppConfig):
    name = 'phy'
    verbose_name = 'Формирование пакетов 802.11ad'
