from rest_framework import serializers

from apps.autolabel.labels import Label


class LabelLineSerializer(serializers.Serializer):
    label = serializers.ChoiceField(choices=Label.choices)
