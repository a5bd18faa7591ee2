"""Exact commutative algebra for limit closures, colengths and related invariants."""

from .errors import (CharacteristicError, NonHomogeneousError, NotAParameterSystem,
                     ParafracError, ParseError, PreconditionError, RingMismatchError,
                     StabilizationError)
from .field import QQ, PrimeField, field_from_characteristic
from .poly import FreeElement, Polynomial, PolyRing
from .orders import (BlockElimination, GrevLex, Lex, PositionOverTerm, Schreyer,
                     TermOverPosition, monomial_cmp)
from .groebner import (GroebnerBasis, Submodule, buchberger, colon, intersect, normal_form,
                       saturation, submodule_equal, syzygies)
from .hilbert import INFINITE
from .modules import (FPModule, ParamSystem, cyclic, free_resolution, ideal_as_module,
                      idealization, koszul_complex, quotient_by)
from .invariants import (ExponentBox, I_fun, J_fun, a_ideals, is_dd_sequence_box,
                         limit_closure, limit_closure_dd, limit_colength, multiplicity,
                         p_standard_sop, table, unmixed_component)
from .hilbert_kunz import e_hk_estimate, hk_function, j_hk_bridge
from .session import parse_session

__version__ = "0.1.0"

__all__ = [
    "CharacteristicError", "NonHomogeneousError", "NotAParameterSystem", "ParafracError",
    "ParseError", "PreconditionError", "RingMismatchError", "StabilizationError",
    "QQ", "PrimeField", "field_from_characteristic",
    "FreeElement", "Polynomial", "PolyRing",
    "BlockElimination", "GrevLex", "Lex", "PositionOverTerm", "Schreyer", "TermOverPosition",
    "monomial_cmp",
    "GroebnerBasis", "Submodule", "buchberger", "colon", "intersect", "normal_form",
    "saturation", "submodule_equal", "syzygies", "INFINITE",
    "FPModule", "ParamSystem", "cyclic", "free_resolution", "ideal_as_module", "idealization",
    "koszul_complex", "quotient_by",
    "ExponentBox", "I_fun", "J_fun", "a_ideals", "is_dd_sequence_box", "limit_closure",
    "limit_closure_dd", "limit_colength", "multiplicity", "p_standard_sop", "table",
    "unmixed_component",
    "e_hk_estimate", "hk_function", "j_hk_bridge", "parse_session",
]
