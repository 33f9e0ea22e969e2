from .config import WorkbenchConfig, get_config, set_config
from .decorators import traced_check
from .enumeration import WeakOrder, survey, weak_orders
from .errors import WorkbenchError
from .field_bk import RatFunc, classical_bk, parse_ratfunc, sign_under
from .groups import GroupSpec, QuotientView, SubgroupDesc, make_group, op_add, quotient
from .orders import OrderSpec, PositiveCone, cone_from_qo, lex_order, omega, omega_preimage
from .qo_core import QO, AxiomId, check_axiom, classify, qo_from_matrix
from .quotient_lift import QOFamily, bk_roundtrip, induce_on_quotient, lift_family
from .results import CheckResult
from .valuations import Valuation, check_valuation, valuational_qo

__version__ = "0.1.0"

__all__ = [
    "AxiomId",
    "CheckResult",
    "GroupSpec",
    "OrderSpec",
    "PositiveCone",
    "QO",
    "QOFamily",
    "QuotientView",
    "RatFunc",
    "SubgroupDesc",
    "Valuation",
    "WeakOrder",
    "WorkbenchConfig",
    "WorkbenchError",
    "bk_roundtrip",
    "check_axiom",
    "check_valuation",
    "classical_bk",
    "classify",
    "cone_from_qo",
    "get_config",
    "induce_on_quotient",
    "lex_order",
    "lift_family",
    "make_group",
    "omega",
    "omega_preimage",
    "op_add",
    "parse_ratfunc",
    "quotient",
    "set_config",
    "sign_under",
    "survey",
    "traced_check",
    "valuational_qo",
    "weak_orders",
]
