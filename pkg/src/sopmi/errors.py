"""Exception hierarchy shared across the pipeline."""


class SopmiError(Exception):
    """Base class for every error raised by this package."""


class DataError(SopmiError):
    """Input data is malformed or unusable."""


class MalformedPretagged(DataError):
    pass


class MalformedReview(DataError):
    def __init__(self, line_no, reason):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class MalformedDocument(DataError):
    def __init__(self, line_no, reason):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class DuplicateDocId(DataError):
    def __init__(self, doc_id):
        super().__init__(f"duplicate document id: {doc_id!r}")
        self.doc_id = doc_id


class IndexFormatError(DataError):
    """An index file has the wrong magic or an unsupported version."""


class BackendError(SopmiError):
    pass


class BackendUnavailable(BackendError):
    """The hit-count backend could not answer a query."""


class CacheIoError(SopmiError, OSError):
    pass


class DomainError(SopmiError, ValueError):
    pass


class DegenerateReference(BackendError):
    """Both reference-word totals are zero, so the log-odds carries no signal."""


class EmptyEvaluation(SopmiError, ValueError):
    pass


class InsufficientData(SopmiError, ValueError):
    pass


class ZeroVariance(SopmiError, ValueError):
    pass
