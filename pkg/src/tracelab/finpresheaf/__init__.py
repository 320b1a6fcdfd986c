from .core import (
    FiniteCategory,
    FiniteMonoidalCategory,
    Functor,
    NatTrans,
    Presheaf,
    TableError,
    builtin_base_names,
    identity_functor,
    load_base,
    representable,
)
from .engine import (
    BangComonad,
    Bifunctor,
    CoendResult,
    check_lan_strong_monoidal,
    coend,
    day_alpha,
    day_lambda,
    day_rho,
    day_sigma,
    day_tensor,
    day_unit,
    enumerate_nat_trans,
    lan_along,
    lan_counit,
    lan_on_nattrans,
    lan_unit,
    precompose,
    quotient,
)

__all__ = [
    "BangComonad",
    "Bifunctor",
    "CoendResult",
    "FiniteCategory",
    "FiniteMonoidalCategory",
    "Functor",
    "NatTrans",
    "Presheaf",
    "TableError",
    "builtin_base_names",
    "check_lan_strong_monoidal",
    "coend",
    "day_alpha",
    "day_lambda",
    "day_rho",
    "day_sigma",
    "day_tensor",
    "day_unit",
    "enumerate_nat_trans",
    "identity_functor",
    "lan_along",
    "lan_counit",
    "lan_on_nattrans",
    "lan_unit",
    "load_base",
    "precompose",
    "quotient",
    "representable",
]
