"""thickness_lab: executable witness constructions for unit-sphere thickness
on finite abelian groups, with the supporting harmonic-analysis toolkit."""

__version__ = "0.1.0"

from .groups import (
    Character,
    FiniteAbelianGroup,
    GroupElement,
    Subgroup,
    annihilator,
    character_image,
    character_order,
    coset_order,
    evaluate_character,
    gamma_tower,
    parse_group_spec,
)
from .intlinalg import snf as smith_normal_form
from .trigpoly import (
    NormCertificate,
    TrigPolynomial,
    fourier_transform,
    lp_norm,
    random_unit_polynomial,
    sample_table,
    sup_norm,
)
from .discgeom import (
    DiscSet,
    Sector,
    cluster_bounds,
    image_is_net,
    net_check,
    sector_rotations,
)
from .witness import (
    GroupSpace,
    LpSpace,
    ThicknessReport,
    WitnessCertificate,
    thickness_lower_bound,
    witness_block_basis,
    witness_fresh_coordinate,
    witness_general,
    witness_high_frequency,
    witness_lp,
)
from .certify import (
    certificate_to_dict,
    save_certificate,
    verify_certificate,
)
from .spectra import (
    SpectrumWindow,
    daugavet_defect,
    ell1_lower_constant,
    lacunarity,
    lambda_ratio,
    sidon_lower,
)

__all__ = [
    "__version__",
    "Character",
    "FiniteAbelianGroup",
    "GroupElement",
    "Subgroup",
    "annihilator",
    "character_image",
    "character_order",
    "coset_order",
    "evaluate_character",
    "gamma_tower",
    "parse_group_spec",
    "smith_normal_form",
    "NormCertificate",
    "TrigPolynomial",
    "fourier_transform",
    "lp_norm",
    "random_unit_polynomial",
    "sample_table",
    "sup_norm",
    "DiscSet",
    "Sector",
    "cluster_bounds",
    "image_is_net",
    "net_check",
    "sector_rotations",
    "GroupSpace",
    "LpSpace",
    "ThicknessReport",
    "WitnessCertificate",
    "thickness_lower_bound",
    "witness_block_basis",
    "witness_fresh_coordinate",
    "witness_general",
    "witness_high_frequency",
    "witness_lp",
    "certificate_to_dict",
    "save_certificate",
    "verify_certificate",
    "SpectrumWindow",
    "daugavet_defect",
    "ell1_lower_constant",
    "lacunarity",
    "lambda_ratio",
    "sidon_lower",
]
