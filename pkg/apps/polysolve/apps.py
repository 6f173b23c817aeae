from django.apps import AppConfig


class PolysolveConfig(AppConfig):
    name = 'apps.polysolve'
    verbose_name = 'Polynomial-time solvers'
