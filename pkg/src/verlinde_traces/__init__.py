"""Exact traces of finite-order curve automorphisms on Verlinde spaces.

Typical use::

    >>> from verlinde_traces import hyperelliptic_spec, TraceRequest, compute_trace
    >>> spec = hyperelliptic_spec(2)
    >>> str(compute_trace(TraceRequest(spec, level=1)).trace)
    '4'
"""

from .curve import (
    AutomorphismSpec,
    ComponentDatum,
    EigenDegreeTable,
    FixedPoint,
    degree_table,
    eigen_dims,
    eigen_exponents,
    enumerate_components,
    hyperelliptic_spec,
    lefschetz_number_curve,
)
from .exactnum import CycloNum, Rational, format_exact, root_of_unity
from .lefschetz import ContributionInput, contribution_residue, contribution_ring
from .pipeline import (
    MathematicalInconsistency,
    TraceReport,
    TraceRequest,
    compute_dimension,
    compute_N0,
    compute_Ni,
    compute_trace,
    eigenspace_dims,
)
from .specfile import SpecError, load_spec, parse_spec

__version__ = "0.1.0"
