from django.apps import AppConfig


class IntervalConfig(AppConfig):
    name = 'apps.interval'
    verbose_name = 'Interval graphs'
