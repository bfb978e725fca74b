from django.apps import AppConfig


class ChannelConfig(AppConfig):
    name = 'channel'
    verbose_name = 'Канал распространения'
