from django.core.management.base import CommandError

from apps.autolabel.datasets import read_dataset
from apps.classifier.training import TrainConfig
from apps.core.commands import USAGE_ERROR, PipelineCommand
from apps.evaluation.protocol import LearningCurveConfig, learning_curve


class Command(PipelineCommand):
    help = "Mean and standard deviation of ROC-AUC and F1 for growing shares of the training set."

    def add_arguments(self, parser):
        parser.add_argument("--train", required=True, help="Training dataset.")
        parser.add_argument("--eval", required=True, dest="evaluation", help="Evaluation dataset.")
        parser.add_argument(
            "--fractions",
            default="0.1,0.25,0.5,0.75,1.0",
            help="Comma-separated training shares (default: %(default)s).",
        )
        parser.add_argument("--runs", type=int, default=10)
        parser.add_argument("--epochs", type=int, default=10)
        parser.add_argument("--workers", type=int, default=1)
        parser.add_argument("--out", help="Write the curve here instead of stdout.")
        self.add_seed_argument(parser)

    def handle(self, *args, **options):
        try:
            fractions = tuple(float(value) for value in options["fractions"].split(",") if value.strip())
        except ValueError as exc:
            raise CommandError(f"invalid --fractions: {exc}", returncode=USAGE_ERROR) from exc
        cfg = LearningCurveConfig(fractions=fractions, runs=options["runs"], seed=options["seed"])
        train_cfg = TrainConfig(seed=options["seed"], epochs=options["epochs"])
        points = learning_curve(
            read_dataset(options["train"]),
            read_dataset(options["evaluation"]),
            cfg,
            train_cfg,
            workers=options["workers"],
        )
        self.emit_json({"points": [point.as_dict() for point in points]}, options["out"])
