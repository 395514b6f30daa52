"""Relative homological invariants of bound quiver algebras over prime fields."""
from .quiveralg import (
    BoundQuiverAlgebra,
    TriangularGluing,
    dual_numbers,
    glue_triangular,
    kronecker,
    linear_quiver,
    point,
    semisimple,
)
from .relative import INF, build_test_class, fd_n_gldim, is_n_exact, is_n_projective, n_ext, n_id, n_pd
from .homalg import ext, fpd, gldim, pd
from .repmod import Representation, ModuleMorphism, ShortSequence

__version__ = "0.1.0"
