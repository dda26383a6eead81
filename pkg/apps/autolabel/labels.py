from django.db import models


class Label(models.TextChoices):
    NATURAL_LANGUAGE = "nl", "Natural language"
    ARTIFACT = "artifact", "Artifact"


class Provenance(models.TextChoices):
    MARKDOWN_SPLIT = "markdown_split", "Markdown split"
    NOISE_FILTER = "noise_filter", "Noise filter"
    MANUAL = "manual", "Manual"
