from django.apps import AppConfig


class ClassifierConfig(AppConfig):
    verbose_name = "Linear classifier"
    name = "apps.classifier"
