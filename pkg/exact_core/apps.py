from django.apps import AppConfig


class ExactCoreConfig(AppConfig):
    name = 'exact_core'
    verbose_name = 'Exact arithmetic core'
