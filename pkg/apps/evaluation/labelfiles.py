"""Label files: one ``nl`` or ``artifact`` per line, UTF-8, LF."""

from apps.autolabel.labels import Label
from apps.core.exceptions import RecordFormatError
from apps.core.jsonl import format_errors, read_text

from .serializers import LabelLineSerializer


def read_label_file(path):
    texts = read_text(path).split("\n")
    if texts and texts[-1] == "":
        texts.pop()
    labels = []
    for line_no, text in enumerate(texts, start=1):
        serializer = LabelLineSerializer(data={"label": text.rstrip("\r")})
        if not serializer.is_valid():
            raise RecordFormatError(path, line_no, format_errors(serializer.errors))
        labels.append(Label(serializer.validated_data["label"]))
    return labels

