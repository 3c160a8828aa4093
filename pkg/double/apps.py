from django.apps import AppConfig


class DoubleConfig(AppConfig):
    name = 'double'
    verbose_name = 'Drinfeld double'
