from django.conf import settings
from django.core.management.base import CommandError

from apps.autolabel.datasets import balance, split_by_documents, split_train_test, write_dataset
from apps.autolabel.labeling import GenerationReport, build_dataset
from apps.core.commands import USAGE_ERROR, PipelineCommand
from apps.core.jsonl import write_json
from apps.corpus.documents import DocumentKind
from apps.corpus.loaders import deduplicate, filter_by_labels, has_linked_commits, load_documents


class Command(PipelineCommand):
    help = "Label issue exports and documentation files line by line and write a dataset."

    def add_arguments(self, parser):
        parser.add_argument(
            "--issues", action="append", default=[], metavar="PATH", help="Issue export file or directory."
        )
        parser.add_argument("--docs", action="append", default=[], metavar="PATH", help="Markdown file or directory.")
        parser.add_argument("--out", required=True, help="Dataset file to write (.jsonl).")
        parser.add_argument("--balance", action="store_true", help="Downsample the majority class.")
        parser.add_argument("--report", help="Write the generation report (JSON) here.")
        parser.add_argument(
            "--labels",
            default=",".join(settings.ARTIFACT_SIEVE["ISSUE_LABELS"]),
            help="Comma-separated issue labels to keep (default: %(default)s).",
        )
        parser.add_argument("--test-out", help="Write a held-out document-level test set here.")
        split = parser.add_mutually_exclusive_group()
        split.add_argument(
            "--test-fraction", type=float, default=0.2, help="Share of documents held out (default: %(default)s)."
        )
        split.add_argument("--linked", action="store_true", help="Hold out issues with linked commits instead.")
        self.add_seed_argument(parser)

    def handle(self, *args, **options):
        if not options["issues"] and not options["docs"]:
            raise CommandError("at least one --issues or --docs source is required", returncode=USAGE_ERROR)

        documents = []
        for path in options["issues"]:
            documents.extend(load_documents(path, DocumentKind.ISSUE_TICKET))
        for path in options["docs"]:
            documents.extend(load_documents(path, DocumentKind.DOCUMENTATION_FILE))
        wanted = {label.strip() for label in options["labels"].split(",") if label.strip()}
        documents = filter_by_labels(deduplicate(documents), wanted)

        report = GenerationReport()
        dataset = build_dataset(documents, report)
        if not len(dataset):
            raise CommandError(
                f"no usable documents: none of {len(documents)} documents produced labeled lines",
                returncode=USAGE_ERROR,
            )

        test = None
        if options["test_out"]:
            if options["linked"]:
                dataset, test = split_train_test(dataset, has_linked_commits(documents))
            else:
                dataset, test = split_by_documents(dataset, options["test_fraction"], options["seed"])
        if options["balance"]:
            dataset = balance(dataset, options["seed"])

        write_dataset(dataset, options["out"])
        summary = {
            "out": options["out"],
            "lines": len(dataset),
            "artifact_lines": dataset.n_artifact,
            "natural_lines": dataset.n_natural,
            "balanced": options["balance"],
        }
        if test is not None:
            write_dataset(test, options["test_out"])
            summary.update(test_out=options["test_out"], test_lines=len(test))
        if options["report"]:
            write_json(options["report"], {**report.as_dict(), "output": summary})
        self.emit_json(summary)
