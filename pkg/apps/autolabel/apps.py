from django.apps import AppConfig


class AutolabelConfig(AppConfig):
    verbose_name = "Automatic labeling"
    name = "apps.autolabel"
