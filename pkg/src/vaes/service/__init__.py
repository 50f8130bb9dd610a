"""HTTP surface: pydantic schemas, pure handlers, FastAPI wiring.

The handlers contain no web code and are reused verbatim by the CLI; the
app module only adds routing and error translation.
"""

from .app import create_app

__all__ = ["create_app"]
