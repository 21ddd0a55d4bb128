"""siltkit: exact-arithmetic workbench for silting-type complexes.

Decides, to a stated search depth, whether a bounded complex of
projectives over a bound quiver algebra is semi-selforthogonal, silting,
tilting, Wakamatsu-tilting or Wakamatsu-silting, and probes the duality
between the two one-sided notions.  All arithmetic is exact (prime
fields or rationals); every verdict is Confirmed, Refuted or
ConsistentToDepth, never a float heuristic.
"""

__version__ = "0.1.0"

from .algebra import (Algebra, AdmissibilityError, Arrow, InputError,
                      Presentation, presentation)
from .approx import (AddTarget, add_target, add_target_from_parts,
                     left_approximation, right_approximation)
from .catalog import (build_catalog, candidate_count, conjecture_sweep,
                      distinct_candidates, raw_candidates)
from .complexes import (ProjComplex, WindowError, cone, cone_triangle,
                        direct_sum, free_stalk, shift, stalk_complex,
                        zero_complex)
from .decompose import indecomposable_module_summands, indecomposable_summands
from .fields import Field, GF2, QQ
from .homs import ChainMap, hom_basis, hom_dim, is_null_homotopic
from .minimize import is_isomorphic, is_minimal, ktheory_class, minimize, \
    position_support
from .modules import FDModule, projective_module
from .probes import SchanuelReport, closure_property_probe, schanuel_verify
from .report import render, report
from .resolved import ResolvedModule, ext_dim
from .specfiles import (ParseError, load_algebra, load_input,
                        parse_algebra_text, parse_complex_text,
                        parse_module_text, write_algebra_text,
                        write_complex_text, write_module_text)
from .towers import (CORESOLVING, RESOLVING, Tower, TowerStep, build_tower)
from .verdicts import (CONFIRMED, CONSISTENT, REFUTED, Verdict, check_duality,
                       default_depth, in_class, is_selforthogonal,
                       is_semi_selforthogonal, is_silting, is_tilting,
                       is_wakamatsu_silting, is_wakamatsu_silting_module,
                       normalize_shift, regular_module,
                       wakamatsu_tilting_module_check)

__all__ = [
    "Algebra", "AdmissibilityError", "Arrow", "InputError", "Presentation",
    "presentation",
    "AddTarget", "add_target", "add_target_from_parts", "left_approximation",
    "right_approximation",
    "build_catalog", "candidate_count", "conjecture_sweep",
    "distinct_candidates", "raw_candidates",
    "ProjComplex", "WindowError", "cone", "cone_triangle", "direct_sum",
    "free_stalk", "shift", "stalk_complex", "zero_complex",
    "indecomposable_module_summands", "indecomposable_summands",
    "Field", "GF2", "QQ",
    "ChainMap", "hom_basis", "hom_dim", "is_null_homotopic",
    "is_isomorphic", "is_minimal", "ktheory_class", "minimize",
    "position_support",
    "FDModule", "projective_module",
    "SchanuelReport", "closure_property_probe", "schanuel_verify",
    "render", "report",
    "ResolvedModule", "ext_dim",
    "ParseError", "load_algebra", "load_input", "parse_algebra_text",
    "parse_complex_text", "parse_module_text", "write_algebra_text",
    "write_complex_text", "write_module_text",
    "CORESOLVING", "RESOLVING", "Tower", "TowerStep", "build_tower",
    "CONFIRMED", "CONSISTENT", "REFUTED", "Verdict", "check_duality",
    "default_depth", "in_class", "is_selforthogonal",
    "is_semi_selforthogonal", "is_silting", "is_tilting",
    "is_wakamatsu_silting", "is_wakamatsu_silting_module", "normalize_shift",
    "regular_module", "wakamatsu_tilting_module_check",
    "__version__",
]
