from django.apps import AppConfig


class BaselineConfig(AppConfig):
    verbose_name = "Regular-expression baselines"
    name = "apps.baseline"
