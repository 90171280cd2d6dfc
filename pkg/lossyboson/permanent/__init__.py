from lossyboson.permanent.kernels import (
    HAS_NUMBA,
    PermanentValue,
    permanent,
    permanent_abs2,
    permanent_naive,
)

__all__ = ["HAS_NUMBA", "PermanentValue", "permanent", "permanent_abs2", "permanent_naive"]
