"""HTTP service exposing the simulator: schemas and FastAPI app factory."""

from .app import create_app

__all__ = ["create_app"]
