from .app import main, run  # noqa: F401
