"""Retarded dispersion interaction between harmonically bound composite particles."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    C_LIGHT,
    GAMMA_G,
    HBAR,
    M_U,
    CoefficientSource,
    Constant,
    Constants,
    London,
    Tabulated,
    eval_polarizability,
    reduced_frequency,
    si_constants,
)
from .dispersion_potential import (  # noqa: E402
    PotentialResult,
    casimir_limit,
    crossover_distance,
    expansion_polynomial,
    potential_expanded,
    potential_full,
    vdw_limit_general,
    vdw_limit_london,
)
from .exceptions import (  # noqa: E402
    InstabilityError,
    InvalidInputError,
    NumericalFailureError,
)
from .gravity_map import (  # noqa: E402
    characteristic_energy_bound,
    mass_to_polarizability,
    newton_equivalence_report,
    newton_potential,
    polarizability_to_mass,
)
from .normal_modes import ParticlePair, determinant  # noqa: E402
from .quadrature import QuadratureSettings  # noqa: E402

__all__ = [
    "__version__",
    "# noqa: E402",
    "C_LIGHT",
    "GAMMA_G",
    "HBAR",
    "M_U",
    "CoefficientSource",
    "Constant",
    "Constants",
    "London",
    "Tabulated",
    "eval_polarizability",
    "reduced_frequency",
    "si_constants",
    "# noqa: E402",
    "PotentialResult",
    "casimir_limit",
    "crossover_distance",
    "expansion_polynomial",
    "potential_expanded",
    "potential_full",
    "vdw_limit_general",
    "vdw_limit_london",
    "# noqa: E402",
    "InstabilityError",
    "InvalidInputError",
    "NumericalFailureError",
    "# noqa: E402",
    "characteristic_energy_bound",
    "mass_to_polarizability",
    "newton_equivalence_report",
    "newton_potential",
    "polarizability_to_mass",
    "ParticlePair",
    "determinant",
    "QuadratureSettings",
]
