"""Symbolic twist/parity calculus for blow-up diagrams.

The package decides when Witt-group push-forwards exist, compiles the
split-section and connecting-homomorphism recipes as validated symbolic
compositions, and verifies the codimension-one symmetric-cone identity
over affine models with exact arithmetic.
"""

from .chainalg import (
    ChainComplex,
    ChainMap,
    SymmetricPair,
    SymmetricSpace,
    Twist,
    cone,
    cone_contraction,
    dual,
    is_contraction,
    localize_check_isometric,
    shift,
    symmetric_cone,
    tensor,
    tensor_forms,
)
from .checker import assert_valid, check_recipe
from .dichotomy import (
    CaseA,
    CaseB,
    LesEntry,
    Recipe,
    RecipeStep,
    StepOp,
    WittRef,
    classify,
    classify_coherent,
    compile_connecting,
    compile_nonregular,
    compile_section,
    les_table,
    main_lemma_recipe,
    nonregular_twist_exponent,
    recipe_to_json,
    recipe_to_text,
)
from .divisor import (
    DivisorModel,
    divisor_pair,
    koszul_pushforward_unit,
    verify_factorization,
    verify_restriction,
)
from .errors import (
    AssumptionError,
    ConfigError,
    DomainError,
    EngineError,
    PreconditionError,
    StructuralError,
    ValidationError,
)
from .geometry import (
    BlowupDiagram,
    DualizingClass,
    HypothesisData,
    MorphismData,
    MorphismKind,
    SchemeNode,
    attach_hypothesis,
    build_blowup,
    diagram_from_config,
    grassmannian_config,
    grassmannian_instance,
    lambda_of,
    picard_sequence_exact,
    pushforward_twist_target,
    shriek,
)
from .lattice import (
    LatticeHom,
    PicElement,
    PicLattice,
    apply,
    coker_mod2_order,
    compose,
    equal_mod2,
)
from .poly import LocalizedElement, PolyElement, PolyRing, parse_ring

__version__ = "0.1.0"
