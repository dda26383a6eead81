from django.conf import settings

from apps.core.commands import PipelineCommand
from apps.corpus.fetcher import fetch_issues


class Command(PipelineCommand):
    help = "Snapshot labeled issues from a REST issue tracker into a local export file."

    def add_arguments(self, parser):
        parser.add_argument(
            "--endpoint", required=True, help="Repository API root, e.g. https://api.github.com/repos/org/name."
        )
        parser.add_argument("--project", required=True)
        parser.add_argument("--snapshot", required=True, help="Export file to write (.jsonl).")
        parser.add_argument(
            "--labels",
            default=",".join(settings.ARTIFACT_SIEVE["ISSUE_LABELS"]),
            help="Comma-separated issue labels (default: %(default)s).",
        )

    def handle(self, *args, **options):
        labels = {label.strip() for label in options["labels"].split(",") if label.strip()}
        documents = fetch_issues(
            options["endpoint"],
            options["project"],
            labels,
            auth_token=settings.ARTIFACT_SIEVE["TOKEN"],
            snapshot=options["snapshot"],
        )
        self.emit_json({"project": options["project"], "issues": len(documents), "snapshot": options["snapshot"]})
