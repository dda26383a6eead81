from rest_framework import serializers


class RawTextField(serializers.Field):
    """
    A string taken verbatim.

    ``CharField`` trims whitespace and rejects NUL characters; bug-report bodies
    and lines must survive untouched, indentation included.
    """

    default_error_messages = {"invalid": "Expected a string."}

    def to_internal_value(self, data):
        if not isinstance(data, str):
            self.fail("invalid")
        return data

    def to_representation(self, value):
        return value
