from . import lorenz

__all__ = ["lorenz"]
