from django.apps import AppConfig


class AnalyticEvalConfig(AppConfig):
    name = 'analytic_eval'
    verbose_name = 'High-precision evaluation'
