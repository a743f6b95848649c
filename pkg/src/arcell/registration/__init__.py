"""Rigid registration: Kabsch, ICP, 4PCS-style coarse alignment, referencing."""

from .coarse import coarse_align
from .icp import IcpParams, RegistrationResult, icp
from .kabsch import fit_residual_rmse, kabsch_fit
from .reference import (
    ReferenceMethod,
    Referencing,
    referencing_from_ground_truth,
    seeded_reference,
    semi_automatic_reference,
)

__all__ = [
    "IcpParams",
    "ReferenceMethod",
    "Referencing",
    "RegistrationResult",
    "coarse_align",
    "fit_residual_rmse",
    "icp",
    "kabsch_fit",
    "referencing_from_ground_truth",
    "seeded_reference",
    "semi_automatic_reference",
]
