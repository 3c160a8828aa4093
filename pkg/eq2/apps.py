from django.apps import AppConfig


class Eq2Config(AppConfig):
    name = 'eq2'
    verbose_name = 'E_q(2) double representation'
