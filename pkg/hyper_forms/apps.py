from django.apps import AppConfig


class HyperFormsConfig(AppConfig):
    name = 'hyper_forms'
    verbose_name = 'Hypergeometric linear forms'
