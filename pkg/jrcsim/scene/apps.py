from django.apps import AppConfig


class SceneConfig(AppConfig):
    name = 'scene'
    verbose_name = 'Цели и траектории'
