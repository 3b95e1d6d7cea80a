"""Prime moats in the rings of integers of the nine imaginary quadratic UFDs."""
from .quadring import (STARK_VALUES, QuadField, RingElement, conjugate, format_element,
                       get_field, norm, subtract, units)
from .primality import is_inert, is_rational_prime, is_ring_prime
from .lattice import ScaledPoint, Sector, canonical, embed, generate_sector_primes
from .predicates import in_circumcircle, orient
from .delaunay import Triangulation, triangulate
from .moats import (MoatRecord, MoatSearch, enumerate_moats, find_moats_up_to,
                    reachable_frontier, validate_moat)
from .density import count_primes_in_quadrant, density_report

__version__ = "0.1.0"

__all__ = [
    "STARK_VALUES", "QuadField", "RingElement", "conjugate", "format_element",
    "get_field", "norm", "subtract", "units", "is_inert", "is_rational_prime",
    "is_ring_prime", "ScaledPoint", "Sector", "canonical", "embed",
    "generate_sector_primes", "in_circumcircle", "orient", "Triangulation",
    "triangulate", "MoatRecord", "MoatSearch", "enumerate_moats", "find_moats_up_to",
    "reachable_frontier", "validate_moat", "count_primes_in_quadrant", "density_report",
]
