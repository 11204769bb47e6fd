"""Exact verification of Bethe-ansatz and projection weight functions for U_q(gl_N)."""
from .evaluation import ModuleShape, l_minus, l_plus, singular_vector, weight_series
from .gauss import gauss
from .harness import ConfigInvalid, Report, RunConfig, compute, run
from .multisets import PiMultiset
from .projection import w_P
from .rmatrix import r_matrix, r_minus, r_plus
from .scalars import DegenerateSample, SamplingExhausted, SingularCorner, sample_point, scalar
from .trace import bethe_B, w_B

__all__ = [
    "ConfigInvalid", "DegenerateSample", "ModuleShape", "PiMultiset", "Report", "RunConfig",
    "SamplingExhausted", "SingularCorner", "bethe_B", "compute", "gauss", "l_minus", "l_plus",
    "r_matrix", "r_minus", "r_plus", "run", "sample_point", "scalar", "singular_vector",
    "w_B", "w_P", "weight_series",
]
