"""jnrlab: numerical laboratory for joint k-numerical ranges of operator tuples."""

from ._kernels import backend_name

__version__ = "0.1.0"

__all__ = ["backend_name", "__version__"]
