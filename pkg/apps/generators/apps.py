from django.apps import AppConfig


class GeneratorsConfig(AppConfig):
    name = 'apps.generators'
    verbose_name = 'Instance generators'
