from darbouxsys import exceptions
from darbouxsys import exact
from darbouxsys import linalg
from darbouxsys import sysparse
from darbouxsys import lie
from darbouxsys import darboux
from darbouxsys import integrability
from darbouxsys import utils

__all__ = [
    "darboux",
    "exact",
    "exceptions",
    "integrability",
    "lie",
    "linalg",
    "sysparse",
    "utils"
]
