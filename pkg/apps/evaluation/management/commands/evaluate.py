from apps.autolabel.datasets import read_dataset
from apps.classifier.persistence import load_model
from apps.core.commands import PipelineCommand
from apps.evaluation.protocol import evaluate_model


class Command(PipelineCommand):
    help = "Score a trained model on a labeled dataset (macro F1, ROC-AUC, confusion counts)."

    def add_arguments(self, parser):
        parser.add_argument("--model", required=True)
        parser.add_argument("--dataset", required=True)
        parser.add_argument("--out", help="Write the report here instead of stdout.")

    def handle(self, *args, **options):
        report = evaluate_model(load_model(options["model"]), read_dataset(options["dataset"]))
        self.emit_json(report.as_dict(), options["out"])
