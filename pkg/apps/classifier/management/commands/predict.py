from apps.classifier.linear import predict
from apps.classifier.persistence import load_model
from apps.core.commands import PipelineCommand
from apps.corpus.loaders import read_lines

BLANK = "blank"


class Command(PipelineCommand):
    help = "Label every line of a text file as nl, artifact or blank."

    def add_arguments(self, parser):
        parser.add_argument("--model", required=True)
        parser.add_argument("--in", required=True, dest="input", metavar="FILE")
        parser.add_argument(
            "--format",
            choices=("labels", "annotated"),
            default="labels",
            help="One tag per line, or each input line prefixed with its tag and a tab.",
        )

    def handle(self, *args, **options):
        model = load_model(options["model"])
        lines = read_lines(options["input"])
        output = []
        for line, prediction in zip(lines, predict(model, lines)):
            tag = BLANK if prediction.blank else prediction.label.value
            output.append(tag if options["format"] == "labels" else f"{tag}\t{line}")
        if output:
            self.stdout.write("\n".join(output))
