from django.apps import AppConfig


class PreprocessConfig(AppConfig):
    verbose_name = "Line tokenization"
    name = "apps.preprocess"
