import json

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from apps.core.exceptions import ArtifactSieveError
from apps.core.jsonl import write_json

USAGE_ERROR = 2


class PipelineCommand(BaseCommand):
    """
    Base for every pipeline subcommand.

    Domain errors leave with exit status 2; results go to stdout, diagnostics
    to stderr and the ``apps`` logger.
    """

    def execute(self, *args, **options):
        try:
            return super().execute(*args, **options)
        except ArtifactSieveError as exc:
            raise CommandError(str(exc), returncode=USAGE_ERROR) from exc

    def add_seed_argument(self, parser):
        parser.add_argument(
            "--seed",
            type=int,
            default=settings.ARTIFACT_SIEVE["SEED"],
            help="Seed for every random choice (default: %(default)s).",
        )

    def emit_json(self, payload, out=None):
        """Write ``payload`` to ``out`` when given, else to stdout."""
        if out:
            write_json(out, payload)
            self.stderr.write(f"wrote {out}")
        else:
            self.stdout.write(json.dumps(payload, ensure_ascii=False, indent=2))
