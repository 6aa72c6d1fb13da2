"""Exact Haar integration over easy homogeneous spaces via partition categories."""

__version__ = "0.1.0"
FORMAT_VERSION = 1

from .partitions import Partition, Color, WHITE, BLACK, join, join_count, signature, delta  # noqa: E402
from .categories import CategoryId, QuantumFamily, SizeLimitError, contains, enumerate_category  # noqa: E402
from .weingarten import SingularGram, gram, weingarten, generalized_weingarten  # noqa: E402
from .integration import (  # noqa: E402
    MomentSpec, SpaceSpec, chi_moment, qg_moment, relation_trace_check, space_moment,
)
from .laws import RegimeSpec, convergence_table, limit_moment, reference_moments  # noqa: E402
