from django.apps import AppConfig


class FptConfig(AppConfig):
    name = 'apps.fpt'
    verbose_name = 'Parameterized algorithms'
