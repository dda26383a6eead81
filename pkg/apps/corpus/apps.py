from django.apps import AppConfig


class CorpusConfig(AppConfig):
    verbose_name = "Corpus ingestion"
    name = "apps.corpus"
