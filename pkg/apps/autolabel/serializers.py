from rest_framework import serializers

from apps.core.serializers import RawTextField

from .labels import Label, Provenance


class LabeledLineSerializer(serializers.Serializer):
    """One record of a dataset file."""

    text = RawTextField()
    label = serializers.ChoiceField(choices=Label.choices)
    doc_id = serializers.CharField()
    line_no = serializers.IntegerField(min_value=0)
    provenance = serializers.ChoiceField(
        choices=Provenance.choices, default=Provenance.MARKDOWN_SPLIT
    )

    def validate_text(self, value):
        if "\n" in value or "\r" in value:
            raise serializers.ValidationError("text must be a single line")
        if not value.strip():
            raise serializers.ValidationError("blank lines never enter datasets")
        return value
