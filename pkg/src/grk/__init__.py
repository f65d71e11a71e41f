"""Graded R-matrices and reflection (K-)matrices for gl(m|n) spin chains.

Numerically verifies, with exact Grassmann sign bookkeeping, the graded
Yang-Baxter equation, both graded reflection algebras, the per-sector
boundary conditions, and the Grassmann boundary-parameter constraints for
every constructed reflection-matrix family.
"""

from .grassmann import (
    GeneratorRegistry,
    GrassmannElement,
    GrassmannError,
    gen,
    gmul,
    gadd,
    gscale,
    gparity,
    gnorm,
)
from .supermatrix import (
    GradingProfile,
    SuperMatrix,
    unit,
    gkron,
    graded_permutation,
    supertranspose,
    st1,
    st2,
    matmul,
    msub,
    mnorm,
)

__all__ = [
    "GeneratorRegistry",
    "GrassmannElement",
    "GrassmannError",
    "gen",
    "gmul",
    "gadd",
    "gscale",
    "gparity",
    "gnorm",
    "GradingProfile",
    "SuperMatrix",
    "unit",
    "gkron",
    "graded_permutation",
    "supertranspose",
    "st1",
    "st2",
    "matmul",
    "msub",
    "mnorm",
]

__version__ = "0.1.0"
