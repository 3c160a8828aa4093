from django.apps import AppConfig


class BicovariantConfig(AppConfig):
    name = 'bicovariant'
    verbose_name = 'Bicovariant bimodules'
