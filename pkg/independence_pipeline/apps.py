from django.apps import AppConfig


class IndependencePipelineConfig(AppConfig):
    name = 'independence_pipeline'
    verbose_name = 'Dimension bounds and elimination plans'
