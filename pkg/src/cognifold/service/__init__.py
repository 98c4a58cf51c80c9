"""HTTP service and client around per-session memory engines."""

from .sessions import BUNDLE_FORMAT, Session, SessionStore, read_log

__all__ = ["BUNDLE_FORMAT", "Session", "SessionStore", "create_app", "read_log"]


def create_app(*args, **kwargs):
    # imported lazily so the CLI can use sessions without loading FastAPI
    from .api import create_app as _create

    return _create(*args, **kwargs)
