from apps.autolabel.labels import Label
from apps.classifier.linear import filter_lines
from apps.classifier.persistence import load_model
from apps.core.commands import PipelineCommand
from apps.corpus.loaders import read_lines


class Command(PipelineCommand):
    help = "Print only the lines of a text file predicted as the kept class."

    def add_arguments(self, parser):
        parser.add_argument("--model", required=True)
        parser.add_argument("--in", required=True, dest="input", metavar="FILE")
        parser.add_argument("--keep", choices=Label.values, default=Label.NATURAL_LANGUAGE.value)

    def handle(self, *args, **options):
        model = load_model(options["model"])
        kept = filter_lines(model, read_lines(options["input"]), options["keep"])
        if kept:
            self.stdout.write("\n".join(kept))
