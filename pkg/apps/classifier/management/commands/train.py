from apps.autolabel.datasets import read_dataset
from apps.classifier.persistence import save_model
from apps.classifier.training import TrainConfig, train
from apps.core.commands import PipelineCommand


class Command(PipelineCommand):
    help = "Train the line classifier on a labeled dataset and write the model file."

    def add_arguments(self, parser):
        parser.add_argument("--dataset", required=True)
        parser.add_argument("--out", required=True, help="Model file to write (.json).")
        parser.add_argument(
            "--fraction", type=float, default=0.4, help="Share of each class used for training (default: %(default)s)."
        )
        parser.add_argument("--epochs", type=int, default=10)
        parser.add_argument(
            "--C", type=float, default=1.0, dest="C", help="Inverse regularization strength (default: %(default)s)."
        )
        parser.add_argument("--min-df", type=int, default=1, help="Minimum number of lines an n-gram must occur in.")
        self.add_seed_argument(parser)

    def handle(self, *args, **options):
        cfg = TrainConfig(
            C=options["C"],
            epochs=options["epochs"],
            seed=options["seed"],
            sample_fraction=options["fraction"],
            min_df=options["min_df"],
        )
        model = train(read_dataset(options["dataset"]), cfg)
        save_model(model, options["out"])
        self.emit_json({"model": options["out"], **model.stats.as_dict()})
