from lossyboson.linalg.matrices import (
    as_complex_matrix,
    scale_bottom_rows,
    scale_right_columns,
    submatrix_st,
)
from lossyboson.linalg.random import Seed, sample_gaussian_matrix, sample_haar_unitary

__all__ = [
    "Seed",
    "as_complex_matrix",
    "sample_gaussian_matrix",
    "sample_haar_unitary",
    "scale_bottom_rows",
    "scale_right_columns",
    "submatrix_st",
]
