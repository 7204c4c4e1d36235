"""comvar: exact presentations of equivariant cohomology rings of commuting
varieties, with an independent kernel oracle and verification suites."""

__version__ = "0.1.0"

from .exactlin import GF, QQ, ZZ, parse_ring

__all__ = ["GF", "QQ", "ZZ", "parse_ring", "__version__"]
