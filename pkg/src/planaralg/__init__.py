"""Exact Temperley-Lieb / Fuss-Catalan planar algebra engine."""

from .scalars import A, B, DELTA, ONE, ZERO, ParamScalar, monomial, parse_scalar
from .diagrams import (
    FCDiagram, LoopCount, TLDiagram, closure_loops, enumerate_basis, enumerate_fc,
    enumerate_tl, identity_diagram, involute,
)
from .algebra import (
    AlgebraElement, check_relations, double, include, intermediate_p, jones_e, multiply,
)
from .traces import (
    GramMatrix, gram_matrix, markov_property_check, markov_trace, positivity_scan,
    quantization_detect,
)
from .cells import PrincipalGraph, bratteli, export_dot, half_diagrams, path_counts
from .tangles import (
    Hole, PlanarTangle, TangleTree, compose, elementary, evaluate, flatten_eval,
    recursive_eval, validate,
)

__version__ = "0.1.0"
