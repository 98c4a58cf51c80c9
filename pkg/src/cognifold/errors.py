"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CogniFoldError(Exception):
    """Base class for all package errors."""


class InvalidExtras(CogniFoldError):
    pass


class IncompatibleEndpoints(CogniFoldError):
    pass


class MissingEndpoint(CogniFoldError):
    pass


class MissingNode(CogniFoldError):
    pass


class MissingEdge(CogniFoldError):
    pass


class ImmutableField(CogniFoldError):
    pass


class KindMismatch(CogniFoldError):
    pass


class SelfMerge(CogniFoldError):
    pass


class InvalidWeight(CogniFoldError):
    pass


class DimensionMismatch(CogniFoldError):
    pass


class CorruptSnapshot(CogniFoldError):
    pass


class IllegalTransition(CogniFoldError):
    pass


class NegativeAge(CogniFoldError):
    pass


class ClockRegression(CogniFoldError):
    pass


class EmbedderUnavailable(CogniFoldError):
    pass


class PlannerUnavailable(CogniFoldError):
    pass


class JudgeUnavailable(CogniFoldError):
    pass


class MalformedResponse(CogniFoldError):
    pass


class ProviderTimeout(PlannerUnavailable, EmbedderUnavailable):
    """The endpoint did not answer in time."""


class AuthFailure(PlannerUnavailable, EmbedderUnavailable):
    pass


class RateLimited(PlannerUnavailable, EmbedderUnavailable):
    pass


class SchemaViolation(CogniFoldError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class MissingProvenance(CogniFoldError):
    pass


class UnknownSession(CogniFoldError):
    pass


class ProviderUnreachable(PlannerUnavailable, EmbedderUnavailable):
    """Connection refused or reset before a response arrived."""
