from apps.autolabel.datasets import read_dataset
from apps.baseline.regex import BaselineMode, evaluate_baseline
from apps.core.commands import PipelineCommand
from apps.corpus.documents import DocumentKind
from apps.corpus.loaders import load_documents


class Command(PipelineCommand):
    help = "Score the regular-expression baselines on a labeled dataset."

    def add_arguments(self, parser):
        parser.add_argument("--dataset", required=True)
        parser.add_argument("--mode", choices=BaselineMode.values, default=BaselineMode.LINE.value)
        parser.add_argument(
            "--issues", action="append", default=[], metavar="PATH", help="Original issue exports for fence context."
        )
        parser.add_argument(
            "--docs", action="append", default=[], metavar="PATH", help="Original Markdown files for fence context."
        )
        parser.add_argument("--out", help="Write the report here instead of stdout.")

    def handle(self, *args, **options):
        documents = None
        if options["issues"] or options["docs"]:
            documents = []
            for path in options["issues"]:
                documents.extend(load_documents(path, DocumentKind.ISSUE_TICKET))
            for path in options["docs"]:
                documents.extend(load_documents(path, DocumentKind.DOCUMENTATION_FILE))
        report = evaluate_baseline(read_dataset(options["dataset"]), options["mode"], documents)
        self.emit_json({"mode": options["mode"], **report.as_dict()}, options["out"])
