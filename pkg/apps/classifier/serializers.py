from rest_framework import serializers


class TrainConfigSerializer(serializers.Serializer):
    C = serializers.FloatField()
    epochs = serializers.IntegerField()
    seed = serializers.IntegerField()
    sample_fraction = serializers.FloatField()
    n_min = serializers.IntegerField()
    n_max = serializers.IntegerField()
    min_df = serializers.IntegerField()


class NgramListField(serializers.Field):
    """A JSON array of n-gram strings; validated in one pass for large vocabularies."""

    default_error_messages = {"invalid": "Expected an array of non-empty strings."}

    def to_internal_value(self, data):
        if not isinstance(data, list) or not all(isinstance(term, str) and term for term in data):
            self.fail("invalid")
        return data

    def to_representation(self, value):
        return list(value)


class WeightListField(serializers.Field):
    default_error_messages = {"invalid": "Expected an array of numbers."}

    def to_internal_value(self, data):
        if not isinstance(data, list) or not all(
            isinstance(weight, (int, float)) and not isinstance(weight, bool) for weight in data
        ):
            self.fail("invalid")
        return data

    def to_representation(self, value):
        return list(value)


class ModelFileSerializer(serializers.Serializer):
    format_version = serializers.IntegerField()
    config = TrainConfigSerializer()
    bias = serializers.FloatField()
    vocabulary = NgramListField()
    weights = WeightListField()

    def validate(self, attrs):
        if len(attrs["vocabulary"]) != len(attrs["weights"]):
            raise serializers.ValidationError(
                f"{len(attrs['weights'])} weights for {len(attrs['vocabulary'])} n-grams"
            )
        return attrs
