"""Builder strategies."""
from .p4 import builder_p4
from .pk import builder_pk

__all__ = ["builder_p4", "builder_pk"]
