class ArtifactSieveError(Exception):
    """Base class for every error the pipeline reports to the user."""


class ConfigurationError(ArtifactSieveError, ValueError):
    pass


class CorpusError(ArtifactSieveError):
    pass


class FetchError(ArtifactSieveError):
    pass


class DatasetError(ArtifactSieveError, ValueError):
    pass


class MetricError(ArtifactSieveError, ValueError):
    pass


class ModelFormatError(ArtifactSieveError):
    pass


class RecordFormatError(ArtifactSieveError):
    """A record in a JSON-Lines or label file violates its schema."""

    def __init__(self, path, line_no, detail):
        self.path = str(path)
        self.line_no = line_no
        self.detail = detail
        super().__init__(f"{self.path}:{line_no}: {detail}")
