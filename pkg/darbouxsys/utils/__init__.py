from . import misc
from . import timer

__all__ = ['misc', 'timer']
