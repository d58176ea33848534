"""Inscribed rectangles of aspect ratio tan(pi*k/2n) in smooth Jordan curves.

Thin re-export of the compiled core. The heavy lifting (curve validation,
the strip-map solver, boundary-loop tracing) lives in C++.
"""

from ._core import (
    AspectFamily,
    BoundaryLoop,
    CorpusSpec,
    CurveModel,
    FindResult,
    ImmersionAudit,
    InrectError,
    MobiusPoint,
    MuValue,
    Rectangle,
    RefineResult,
    RefineStatus,
    SearchConfig,
    SystemResidual,
    TorusKnotId,
    ValidationReport,
    batson_bound,
    boundary_loop,
    canonicalize,
    canonical_ratio,
    curve_from_json,
    dedup,
    family_ratios,
    find_rectangles,
    find_rectangles_full,
    fit_from_samples,
    generate_corpus,
    immersion_audit,
    kn_loop,
    kn_point,
    load_curve_file,
    mobius_distance,
    mu_jacobian,
    mu_map,
    newton_refine,
    probe_max_epsilon,
    rect_from_pairs,
    residual,
    system_jacobian,
    torus_braid_word,
    validate_jordan,
    winding_invariants,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
