# serializers.py
from rest_framework import serializers

from apps.core.serializers import RawTextField

# ───────────────────────────────────
# 1. LOCAL ISSUE EXPORT RECORDS
# ───────────────────────────────────


class IssueRecordSerializer(serializers.Serializer):
    """One line of an issue export (.jsonl)."""

    id = serializers.CharField()
    project = serializers.CharField(allow_blank=True, default="")
    labels = serializers.ListField(child=serializers.CharField(), default=list)
    body = RawTextField()
    linked_commits = serializers.ListField(
        child=serializers.CharField(), required=False, default=list
    )


# ───────────────────────────────────
# 2. REMOTE ISSUE PAYLOADS
# ───────────────────────────────────


class LabelNameField(serializers.Field):
    """Accepts ``"bug"`` as well as GitHub's ``{"name": "bug", ...}`` objects."""

    default_error_messages = {"invalid": "Expected a label name or label object."}

    def to_internal_value(self, data):
        if isinstance(data, dict):
            data = data.get("name")
        if not isinstance(data, str) or not data:
            self.fail("invalid")
        return data

    def to_representation(self, value):
        return value


class RemoteIssueSerializer(serializers.Serializer):
    number = serializers.IntegerField(min_value=0)
    body = RawTextField(allow_null=True, required=False, default="")
    labels = serializers.ListField(child=LabelNameField(), required=False, default=list)
    pull_request = serializers.DictField(required=False)
