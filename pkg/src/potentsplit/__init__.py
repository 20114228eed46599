"""Decompose matrices over finite commutative rings into potent plus square-zero parts."""

from .errors import *  # noqa: F401,F403
from .rings import (
    DualNumbers,
    GaloisField,
    IntegersMod,
    PrimeField,
    QuotientRing,
    RingElement,
    ZpSquared,
    crt_split,
    elem_pow,
    integers_mod,
    is_potent,
    parse_ring,
    residue_and_lift,
)
from .poly import Poly, is_irreducible, poly_factor
from .matrices import Matrix, companion, kernel_and_image_basis, mat_inverse, order_of_invertible
from .canonical import invariant_factors, primary_rcf, square_zero_frame

__version__ = "0.1.0"
