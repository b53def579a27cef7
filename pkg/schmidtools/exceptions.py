"""
Exceptions raised by the package.

Argument errors use the builtin `ValueError` and `TypeError`; the classes
below cover failures of the computations themselves.
"""


class SchmidtoolsError(Exception):
    pass


class ResourceLimitError(SchmidtoolsError, RuntimeError):

    def __init__(self, what, limit, requested):
        self.what = what
        self.limit = limit
        self.requested = requested

        super().__init__("Resource cap for `{}` exceeded: {} requested, limit {}."
                         .format(what, requested, limit))


class IllegalMoveError(SchmidtoolsError, ValueError):

    def __init__(self, verdict, transcript=None):
        self.verdict = verdict
        self.transcript = transcript

        super().__init__("Illegal move rejected by rule `{}`: {}"
                         .format(verdict.rule, verdict.detail))


class StrategyInvariantError(SchmidtoolsError, AssertionError):
    pass


class PipelineFailure(SchmidtoolsError, RuntimeError):

    def __init__(self, message, diagnostic=None):
        self.diagnostic = diagnostic or {}

        super().__init__(message)


class CertificateError(SchmidtoolsError, ValueError):
    pass
