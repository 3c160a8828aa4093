from django.apps import AppConfig


class CalculusConfig(AppConfig):
    name = 'calculus'
    verbose_name = 'First-order differential calculi'
