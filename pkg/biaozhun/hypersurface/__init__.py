"""超曲面 jet、映射 jet 与变换规则"""
from biaozhun.hypersurface.automorphisms import (linear_isometry, quadric_automorphism_a,
                                                 quadric_automorphism_r)
from biaozhun.hypersurface.jet import HypersurfaceJet, quadric, validate_hypersurface, validate_real_jet
from biaozhun.hypersurface.levi import LeviDiagnostic, levi_diagnostic
from biaozhun.hypersurface.mapjet import (MapJet, NormalizedMapFlags, compose, identity_map, invert,
                                          is_fg_normalized, is_levi_isometry_linear_part,
                                          is_linear_normalized, linear_map, map_flags, validate_map)
from biaozhun.hypersurface.transform import apply_map, check_transformation_identity

__all__ = [
    "HypersurfaceJet", "MapJet", "NormalizedMapFlags", "LeviDiagnostic",
    "validate_hypersurface", "validate_real_jet", "quadric", "levi_diagnostic",
    "validate_map", "identity_map", "linear_map", "compose", "invert",
    "is_fg_normalized", "is_linear_normalized", "is_levi_isometry_linear_part", "map_flags",
    "apply_map", "check_transformation_identity",
    "quadric_automorphism_a", "quadric_automorphism_r", "linear_isometry",
]
