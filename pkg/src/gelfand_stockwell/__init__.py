"""Stockwell transforms and localization operators on finite Gelfand pairs."""

__version__ = "0.1.0"

from .groups import (  # noqa: E402
    FiniteGroup,
    GroupAutomorphism,
    Subgroup,
    bi_invariant_project,
    build_group,
    check_automorphism,
    check_subgroup,
    convolve,
    double_cosets,
)
from .spherical import (  # noqa: E402
    GelfandPair,
    SphericalDual,
    certify_gelfand,
    check_positive_definite,
    hecke_structure,
    plancherel_weights,
    spherical_dual,
    spherical_ft,
    spherical_functions,
    spherical_ift,
)
from .stockwell import (  # noqa: E402
    Window,
    classic_stransform,
    make_window,
    reproducing_kernel,
    stockwell_forward,
    stockwell_inverse,
)
from .localization import (  # noqa: E402
    adjoint_check,
    bound_suite,
    build_localization,
    operator_norm,
    symbol_norm,
)
from .catalog import get_pair, list_pairs  # noqa: E402
