from apps.core.commands import PipelineCommand
from apps.evaluation.labelfiles import read_label_file
from apps.evaluation.metrics import cohen_kappa


class Command(PipelineCommand):
    help = "Cohen's kappa between two label files (one nl/artifact label per line)."

    def add_arguments(self, parser):
        parser.add_argument("--a", required=True, help="Labels of the first rater.")
        parser.add_argument("--b", required=True, help="Labels of the second rater.")

    def handle(self, *args, **options):
        kappa = cohen_kappa(read_label_file(options["a"]), read_label_file(options["b"]))
        self.stdout.write(f"{kappa:.6f}")
