from django.apps import AppConfig


class PadeVerifyConfig(AppConfig):
    name = 'pade_verify'
    verbose_name = 'Padé orders and matrix identities'
