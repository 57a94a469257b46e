"""Exact engine for graded Frobenius structures on manifold cohomology.

Everything is computed over exact scalars: rationals or prime fields.
The package builds cohomology rings of model manifolds, derives their
duality coproducts, verifies the Frobenius axioms by evaluating relation
diagrams, and counts automorphism cosets over finite fields.
"""

from .scalars import FieldError, FieldSpec, PrimeField, Rationals
from .linear import (GradedSpace, GradedSpaceError, MultiOp, MultiOpError,
                     horizontal_tensor, identity_op, op_equal,
                     op_mismatch_reason, op_scale, permutation_op,
                     vertical_compose, zero_op)
from .props import (ChainMap, Conjugator, Diagram, DiagramError, Gen, HComp,
                    Id, Interpretation, InterpretationError, Perm, Signature,
                    SignatureError, VComp, check_prop_morphism_property,
                    conjugate_interpretation, conjugate_op, diagram_to_json,
                    end_of_map_space, evaluate, hom_dimension, parse_diagram,
                    tensor_power)
from .frobenius import (AxiomReport, DegeneratePairingError, FrobeniusError,
                        FrobeniusStructure, Pairing, center_check,
                        check_axioms, coproduct_from_pairing, copairing_solve,
                        find_top_class, handle_element, handle_element_check,
                        handle_operator, is_nondegenerate,
                        pairing_from_structure)
from .manifolds import (ManifoldSpec, ManifoldSpecError, build_structure,
                        connsum, cp, euler_characteristic, reduce_mod_p,
                        sphere, surface)
from .orbits import (AutOrbitReport, BudgetExceededError, DEFAULT_BUDGET,
                     GradedAutomorphism, OrbitError, OrbitResult,
                     enumerate_algebra_automorphisms,
                     enumerate_frobenius_automorphisms, gl_generators,
                     graded_linear_order, orbit_of_structure,
                     realization_count_report)
from .cli import RunConfig, SpecParseError, parse_field, parse_spec, run

__version__ = "0.1.0"

__all__ = [
    "AutOrbitReport", "AxiomReport", "BudgetExceededError", "ChainMap",
    "Conjugator", "DEFAULT_BUDGET", "DegeneratePairingError", "Diagram",
    "DiagramError", "FieldError", "FieldSpec", "FrobeniusError",
    "FrobeniusStructure", "Gen", "GradedAutomorphism", "GradedSpace",
    "GradedSpaceError", "HComp", "Id", "Interpretation",
    "InterpretationError", "ManifoldSpec", "ManifoldSpecError", "MultiOp",
    "MultiOpError", "OrbitError", "OrbitResult", "Pairing", "Perm",
    "PrimeField", "Rationals", "RunConfig", "Signature", "SignatureError",
    "SpecParseError", "VComp", "build_structure", "center_check",
    "check_axioms", "check_prop_morphism_property", "conjugate_interpretation",
    "conjugate_op", "connsum", "copairing_solve", "coproduct_from_pairing",
    "cp", "diagram_to_json", "end_of_map_space",
    "enumerate_algebra_automorphisms", "enumerate_frobenius_automorphisms",
    "euler_characteristic", "evaluate", "find_top_class", "gl_generators",
    "graded_linear_order", "handle_element", "handle_element_check",
    "handle_operator", "hom_dimension", "horizontal_tensor", "identity_op",
    "is_nondegenerate", "op_equal", "op_mismatch_reason", "op_scale",
    "orbit_of_structure", "pairing_from_structure", "parse_diagram",
    "parse_field", "parse_spec", "permutation_op", "realization_count_report",
    "reduce_mod_p", "run", "sphere", "surface", "tensor_power",
    "vertical_compose", "zero_op",
]
