"""H-type Carnot groups: structure matrices, closed-form sub-Riemannian
geodesics, exponential-map inversion, Carnot-Caratheodory distances, and
cut-locus classification."""
from .algebra import (
    Covector,
    GroupPoint,
    HTypeAlgebra,
    bracket,
    build_algebra,
    j_map,
    load_algebra,
    min_module_dim,
    omega,
    save_algebra,
    verify_relations,
)
from .connect import (
    ConnectionResult,
    EndpointVerificationError,
    Multiplicity,
    RootEntry,
    RootSet,
    TargetClass,
    classify,
    connect_generic,
    connect_horizontal,
    connect_vertical,
    mu,
    nu,
    result_to_dict,
    solve_mu,
)
from .geodesics import (
    GeodesicSample,
    GeodesicSpec,
    eval_geodesic,
    geodesic_length,
    zdot_closed,
    zdot_full,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .numeric import (
    Bracket,
    PolylinePath,
    brute_distance,
    fd_derivative,
    polyline_endpoint,
    polyline_length,
    refine_root,
    sinc_like,
)

__version__ = "0.1.0"

__all__ = [
    "Covector",
    "GroupPoint",
    "HTypeAlgebra",
    "bracket",
    "build_algebra",
    "j_map",
    "load_algebra",
    "min_module_dim",
    "omega",
    "save_algebra",
    "verify_relations",
    "ConnectionResult",
    "EndpointVerificationError",
    "Multiplicity",
    "RootEntry",
    "RootSet",
    "TargetClass",
    "classify",
    "connect_generic",
    "connect_horizontal",
    "connect_vertical",
    "mu",
    "nu",
    "result_to_dict",
    "solve_mu",
    "GeodesicSample",
    "GeodesicSpec",
    "eval_geodesic",
    "geodesic_length",
    "zdot_closed",
    "zdot_full",
    "KERNEL_BACKEND",
    "Bracket",
    "PolylinePath",
    "brute_distance",
    "fd_derivative",
    "polyline_endpoint",
    "polyline_length",
    "refine_root",
    "sinc_like",
    "__version__",
]
