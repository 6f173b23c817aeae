from django.apps import AppConfig


class ColoringConfig(AppConfig):
    name = 'apps.coloring'
    verbose_name = 'Colorings and verifiers'
