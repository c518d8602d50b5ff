"""synpy — синтаксис со связыванием переменных по 2-сигнатуре."""

from .exceptions import (
    ModelError,
    ParseError,
    PatternError,
    SamplingError,
    ScopeError,
    ShapeError,
    SynError,
    UsageError,
    ValidationError,
)
from .halfeq import Verdict, VerdictKind, eval_hexp, naturality_check, satisfies
from .hexp import check_pattern, format_hexp, parse_hexp, shape_check
from .laws import (
    Report,
    check_kernel_laws,
    check_module_laws,
    check_monad_laws,
    check_order_laws,
    check_rep_morphism,
)
from .models import (
    ChaoticModel,
    DiscreteModel,
    FreeVarsModel,
    Model,
    PermutedModel,
    SyntacticModel,
    check_init_monad_morphism,
    check_init_monotone,
    init_fold,
    parse_model,
)
from .modules import ProdElem, prod_leq, prod_map, prod_subst
from .reduction import (
    FuelExhausted,
    NormalForm,
    leq,
    match_pattern,
    normalize,
    redexes,
    step,
)
from .signature import (
    Inequation,
    Operation,
    Signature1,
    Signature2,
    load_signature,
    parse_signature_file,
)
from .syntax import format_term, parse_context, parse_term
from .terms import (
    Con,
    Renaming,
    SubstMap,
    Var,
    rename,
    scope_check,
    shift,
    strengthen,
    subst,
    subst1,
    weaken_term,
)

__version__ = "0.1.0"

__all__ = [
    "SynError",
    "ParseError",
    "ValidationError",
    "ShapeError",
    "PatternError",
    "ScopeError",
    "ModelError",
    "SamplingError",
    "UsageError",
    "Operation",
    "Signature1",
    "Inequation",
    "Signature2",
    "parse_signature_file",
    "load_signature",
    "shape_check",
    "check_pattern",
    "parse_hexp",
    "format_hexp",
    "Var",
    "Con",
    "Renaming",
    "SubstMap",
    "scope_check",
    "rename",
    "shift",
    "subst",
    "subst1",
    "weaken_term",
    "strengthen",
    "parse_context",
    "parse_term",
    "format_term",
    "ProdElem",
    "prod_subst",
    "prod_leq",
    "prod_map",
    "Model",
    "SyntacticModel",
    "DiscreteModel",
    "ChaoticModel",
    "PermutedModel",
    "FreeVarsModel",
    "parse_model",
    "init_fold",
    "check_init_monad_morphism",
    "check_init_monotone",
    "eval_hexp",
    "satisfies",
    "Verdict",
    "VerdictKind",
    "naturality_check",
    "match_pattern",
    "redexes",
    "step",
    "leq",
    "normalize",
    "NormalForm",
    "FuelExhausted",
    "Report",
    "check_monad_laws",
    "check_module_laws",
    "check_rep_morphism",
    "check_order_laws",
    "check_kernel_laws",
]
