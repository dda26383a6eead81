from apps.core.commands import PipelineCommand
from apps.corpus.fixtures import build_fixture_corpus


class Command(PipelineCommand):
    help = "Write the synthetic bug-report corpus with per-line ground truth."

    def add_arguments(self, parser):
        parser.add_argument("--out", required=True, help="Target directory.")
        parser.add_argument("--issues", type=int, default=120, help="Number of issue reports.")
        parser.add_argument("--docs", type=int, default=20, help="Number of documentation files.")
        self.add_seed_argument(parser)

    def handle(self, *args, **options):
        corpus = build_fixture_corpus(
            options["out"], seed=options["seed"], n_issues=options["issues"], n_docs=options["docs"]
        )
        self.emit_json(
            {
                "issues": len(corpus.issues),
                "docs": len(corpus.docs),
                "labeled_lines": len(corpus.truth),
                "artifact_lines": corpus.truth.n_artifact,
                "natural_lines": corpus.truth.n_natural,
            }
        )
