"""Formal group laws over finite-precision p-adic rings, Koszul homology and bud groupoids."""
from .errors import FglabError
from .local import LocalFieldDesc, LocalNum, make_local_field, make_unramified, qp
from .series import TruncSeries

__version__ = "0.1.0"

__all__ = [
    "FglabError",
    "LocalFieldDesc",
    "LocalNum",
    "TruncSeries",
    "make_local_field",
    "make_unramified",
    "qp",
]
