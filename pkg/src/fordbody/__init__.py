"""Ford domains, dual spines and core-tunnel certificates for geometrically
finite hyperbolic structures on the (1;2)-compression body."""

from .dual import (DualComplex, TunnelCertification, TunnelStatus, build_dual,
                   core_tunnel_status)
from .engine import (Budget, FordDomain, MinParabolic, Representation, Status,
                     VerificationReport, brute_force_oracle,
                     check_minimal_parabolic, edge_cycle, evaluate_word,
                     normalize_representation, run_procedure, verify_poincare)
from .errors import (DegenerateLattice, FixesInfinity, FordBodyError,
                     NoIntersection, NotLoxodromic, NotParabolic, OpenCycle,
                     PathBroken, SchemaError)
from .lattice import (CuspLattice, Rectangle, min_translation_length,
                      nearest_translate, neighbor_offsets, reduce,
                      translates_in_window)
from .moebius import (INFINITY, EPS_GEOM, GroupWord, IsoSphere, MapClass,
                      MoebiusMap, classify, compose, isometric_sphere)
from .scene import (Scene, default_window, dumps_canonical, parse_rep_config,
                    parse_scene, to_scene, to_svg)
from .sweep import (EventKind, PathEvent, RepPath, certify_tunnel_along_path,
                    classify_event, sweep)
from .visibility import (EdgeArc, ShimizuResult, SphereRelation,
                         dihedral_angle, interior_angle, shimizu_check,
                         sphere_relation, visible_edge, visible_wrt,
                         visibly_tangent)

__version__ = "0.1.0"
