from django.apps import AppConfig


class FeaturesConfig(AppConfig):
    verbose_name = "N-gram features"
    name = "apps.features"
