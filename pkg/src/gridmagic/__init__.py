"""Magic labellings of grid graphs: counts, Ehrhart data, recurrences, stackings."""

from .counting import count_generic, count_grid, enumerate_labellings, grid_sequence
from .decompose import decompose, extract_matching
from .ehrhart import dimension, ehrhart_polynomial, gorenstein_check, h_vector
from .graph import bipartition, build_grid, build_torus, h_description
from .kasteleyn import kasteleyn
from .labelling import MagicLabelling, check_difflemma, gorenstein_witness, validate
from .recurrence import (
    Recurrence,
    berlekamp_massey,
    char_poly_recurrence,
    power_recurrence,
    tiling_recurrence,
    transfer_matrix,
    verify_reciprocity,
)

__version__ = "0.1.0"
