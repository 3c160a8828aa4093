from django.apps import AppConfig


class HochschildConfig(AppConfig):
    name = 'hochschild'
    verbose_name = 'Hochschild cohomology'
