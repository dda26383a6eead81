from apps.autolabel.datasets import read_dataset
from apps.classifier.training import TrainConfig
from apps.core.commands import PipelineCommand
from apps.evaluation.protocol import BootstrapConfig, bootstrap_eval


class Command(PipelineCommand):
    help = "Bootstrap confidence intervals for macro F1 and ROC-AUC over repeated train/test splits."

    def add_arguments(self, parser):
        parser.add_argument("--dataset", required=True)
        parser.add_argument("--n", type=int, default=100, help="Iterations (default: %(default)s).")
        parser.add_argument("--alpha", type=float, default=0.95, help="Confidence level (default: %(default)s).")
        parser.add_argument(
            "--split", type=float, default=0.8, help="Training share of each split (default: %(default)s)."
        )
        parser.add_argument("--fraction", type=float, default=0.4, help="Training sample fraction per iteration.")
        parser.add_argument("--epochs", type=int, default=10)
        parser.add_argument("--workers", type=int, default=1)
        parser.add_argument("--out", help="Write the report here instead of stdout.")
        self.add_seed_argument(parser)

    def handle(self, *args, **options):
        cfg = BootstrapConfig(alpha=options["alpha"], n=options["n"], split=options["split"], seed=options["seed"])
        train_cfg = TrainConfig(seed=options["seed"], sample_fraction=options["fraction"], epochs=options["epochs"])
        report = bootstrap_eval(read_dataset(options["dataset"]), cfg, train_cfg, workers=options["workers"])
        self.emit_json(report.as_dict(), options["out"])
