from django.apps import AppConfig


class HardnessConfig(AppConfig):
    name = 'apps.hardness'
    verbose_name = 'Hardness gadget'
